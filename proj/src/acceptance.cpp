#include "cspin/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <ostream>
#include <random>
#include <sstream>

#include "cspin/canonical.hpp"
#include "cspin/ergotropy.hpp"
#include "cspin/experiments.hpp"
#include "cspin/hmf.hpp"
#include "cspin/thermo.hpp"

namespace cspin::acceptance {

namespace {

CriterionResult named(int id, const char* name) {
  CriterionResult res;
  res.id = id;
  res.name = name;
  return res;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> out(n);
  for (int k = 0; k < n; ++k) out[k] = a + (b - a) * k / (n - 1);
  return out;
}

QubitState random_state(std::mt19937& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  double x = normal(rng), y = normal(rng), z = normal(rng);
  const double norm = std::sqrt(x * x + y * y + z * z);
  const double radius = std::cbrt(uni(rng));
  QubitState s;
  s.x = radius * x / norm;
  s.y = radius * y / norm;
  s.z = radius * z / norm;
  return s;
}

struct Check {
  bool ok = true;
  std::string detail;

  void merge(bool condition, const std::string& message) {
    if (!condition && ok) {
      ok = false;
      detail = message;
    }
  }
};

// ---- criterion bodies ------------------------------------------------

CriterionResult oracle_equivalence(unsigned seed) {
  CriterionResult res = named(1, "oracle equivalence (analytic vs dense joint state)");
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u_omega(0.5, 5.0), u_eps(0.05, 2.0),
      u_temp(0.1, 10.0);
  const std::vector<double> times = linspace(0.0, 20.0, 16);
  double worst = 0.0;
  for (int n : {1, 2, 4, 6, 8}) {
    for (int draw = 0; draw < 5; ++draw) {
      ModelParams p;
      p.omega0 = u_omega(rng);
      p.omega = u_omega(rng);
      p.epsilon = u_eps(rng);
      p.beta = 1.0 / u_temp(rng);
      p.n_spins = n;
      const JointPropagator analytic(p);
      const OraclePropagator oracle(p);
      for (int s = 0; s < 10; ++s) {
        const QubitState rho0 = random_state(rng);
        for (double t : times) {
          const JointState a = analytic.at(rho0, t);
          const JointState b = oracle.at(rho0.matrix(), t);
          worst = std::max(worst,
                           (a.matrix - b.matrix).cwiseAbs().maxCoeff());
        }
      }
    }
  }
  res.passed = worst <= 1e-9;
  res.detail = "max element diff " + fmt(worst) + " (tol 1e-9)";
  return res;
}

CriterionResult map_sanity() {
  CriterionResult res = named(2, "map sanity (identity, trace preservation, Choi)");
  Check check;
  double worst_choi = 0.0, worst_trace = 0.0;
  ExperimentConfig fig2 = preset_config(Preset::kFig2);
  for (double eps : fig2.epsilon_list()) {
    ModelParams p = fig2.params;
    p.epsilon = eps;
    const TripletEvaluator eval(p);
    const DynamicalMap at0 = dynamical_map(eval(0.0));
    check.merge((at0.phi - Matrix4c::Identity()).cwiseAbs().maxCoeff() <= 1e-12,
                "Phi(0) != I");
    for (double t : fig2.grid.times()) {
      const DynamicalMap map = dynamical_map(eval(t));
      // Tr[Phi(rho)] = Tr[rho]: population rows must sum to (1,0,0,1)
      Vector4c trace_row = map.phi.row(0) + map.phi.row(3);
      trace_row[0] -= 1.0;
      trace_row[3] -= 1.0;
      worst_trace = std::max(worst_trace, trace_row.cwiseAbs().maxCoeff());
      Eigen::SelfAdjointEigenSolver<Matrix4c> choi(choi_matrix(map.phi),
                                                   Eigen::EigenvaluesOnly);
      worst_choi = std::min(worst_choi, choi.eigenvalues().minCoeff());
    }
  }
  check.merge(worst_trace <= 1e-12, "trace preservation violated");
  check.merge(worst_choi >= -1e-10, "Choi negativity");
  res.passed = check.ok;
  res.detail = "min Choi eig " + fmt(worst_choi) + ", max trace defect " +
               fmt(worst_trace) + (check.ok ? "" : "; " + check.detail);
  return res;
}

CriterionResult first_law() {
  CriterionResult res = named(3, "first law at the fig2 preset scaled to N = 20");
  ExperimentConfig cfg = preset_config(Preset::kFig2);
  cfg.params.n_spins = 20;
  const std::vector<double> times = cfg.grid.times();
  double worst = 0.0, worst_route = 0.0;
  for (double eps : cfg.epsilon_list()) {
    ModelParams p = cfg.params;
    p.epsilon = eps;
    const QubitState rho0 = cfg.initial.realize(p);
    const TripletEvaluator eval(p);
    const double z0 = rho0.z;
    const auto records = thermo_trajectory(p, rho0, times);
    for (size_t k = 0; k < times.size(); ++k) {
      // dU_S from the closed-form z(t), bath side from the joint state
      const double du =
          delta_u_system(propagate_system(rho0, eval(times[k])).z, z0, p.omega0);
      const double residual =
          std::abs(du + records[k].q_bath - records[k].work_interaction);
      worst = std::max(worst, residual);
      // integrated bath-heat-current route: Q_B = -dU_S + <V(0)> - <V(t)>
      const double q_route = -du + records[k].work_interaction;
      worst_route = std::max(worst_route, std::abs(q_route - records[k].q_bath));
    }
  }
  res.passed = worst <= 1e-9 && worst_route <= 1e-9;
  res.detail = "max |dU_S + Q_B - W| " + fmt(worst) +
               ", heat-current route diff " + fmt(worst_route) + " (tol 1e-9)";
  return res;
}

CriterionResult second_law() {
  CriterionResult res = named(4, "second law (Sigma >= 0, Clausius form, finite bath)");
  Check check;
  double min_sigma = 1e300, worst_forms = 0.0, worst_finite = -1e300;
  ExperimentConfig fig2 = preset_config(Preset::kFig2);
  for (double eps : fig2.epsilon_list()) {
    ModelParams p = fig2.params;
    p.epsilon = eps;
    const auto records =
        thermo_trajectory(p, fig2.initial.realize(p), fig2.grid.times());
    for (const auto& rec : records) {
      min_sigma = std::min(min_sigma, rec.sigma);
      worst_forms =
          std::max(worst_forms, std::abs(rec.sigma - rec.sigma_clausius));
    }
  }
  ExperimentConfig fig3 = preset_config(Preset::kFig3);
  const auto records = thermo_trajectory(
      fig3.params, fig3.initial.realize(fig3.params), fig3.grid.times());
  for (const auto& rec : records) {
    min_sigma = std::min(min_sigma, rec.sigma);
    worst_forms =
        std::max(worst_forms, std::abs(rec.sigma - rec.sigma_clausius));
    worst_finite = std::max(worst_finite, rec.sigma_finite - rec.sigma);
  }
  check.merge(min_sigma >= -1e-9, "Sigma < -1e-9");
  check.merge(worst_forms <= 1e-8, "relative-entropy vs Clausius mismatch");
  check.merge(worst_finite <= 1e-8, "Sigma_finite above Sigma");
  res.passed = check.ok;
  res.detail = "min Sigma " + fmt(min_sigma) + ", form mismatch " +
               fmt(worst_forms) + ", max(Sig_fin - Sig) " + fmt(worst_finite);
  return res;
}

CriterionResult hmf_correctness() {
  CriterionResult res = named(5, "HMF: analytic pi route vs dense global Gibbs");
  double worst_state = 0.0, worst_ratio = 0.0;
  for (int n = 1; n <= 10; ++n) {
    for (double eps : {0.25, 1.0}) {
      ModelParams p{2.5, 2.0, eps, n, 1.0};
      const DenseOperators ops = build_dense_hamiltonians(p);
      Eigen::SelfAdjointEigenSolver<MatrixXc> solver(ops.total);
      for (double beta : {0.01, 0.1, 1.0, 10.0}) {
        const MeanForceResult mf = mean_force(p, beta);
        // dense Tr_B of exp(-beta H)/Z_SB with a common eigenvalue shift
        const double shift = solver.eigenvalues().minCoeff();
        VectorXc boltz(p.joint_dim());
        for (int k = 0; k < p.joint_dim(); ++k)
          boltz[k] = std::exp(-beta * (solver.eigenvalues()[k] - shift));
        const MatrixXc expm = solver.eigenvectors() * boltz.asDiagonal() *
                              solver.eigenvectors().adjoint();
        const int db = p.bath_dim();
        Matrix2c trb = Matrix2c::Zero();
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b)
            trb(a, b) = expm.block(a * db, b * db, db, db).trace();
        const double z_sb = trb.trace().real();
        worst_state = std::max(
            worst_state,
            (trb / z_sb - mf.gibbs_state).cwiseAbs().maxCoeff());
        // pi00 + pi11 = Z_SB / Z_B, relative; logs to dodge overflow
        ModelParams pb = p;
        pb.beta = beta;
        const double log_zb = bath_thermal_state(pb).log_partition;
        const double log_zsb = std::log(z_sb) - beta * shift;
        const double ratio = std::exp(log_zsb - log_zb);
        worst_ratio = std::max(
            worst_ratio, std::abs(mf.pi00 + mf.pi11 - ratio) / std::abs(ratio));
      }
    }
  }
  res.passed = worst_state <= 1e-10 && worst_ratio <= 1e-10;
  res.detail = "max state diff " + fmt(worst_state) + ", partition ratio rel " +
               fmt(worst_ratio) + " (tol 1e-10)";
  return res;
}

CriterionResult third_law() {
  CriterionResult res = named(6, "third law at fig4 parameters (N=80, omega=omega0=5)");
  Check check;
  ModelParams p{5.0, 5.0, 0.1, 80, 1.0};
  const double s_cold = thermodynamic_entropy(build_spectrum(p), p, 50.0);
  check.merge(s_cold <= 0.05, "S(beta=50, eps=0.1) above 0.05");
  double worst_hot = 0.0;
  for (double eps : {0.1, 0.5, 1.0}) {
    ModelParams ph = p;
    ph.epsilon = eps;
    const double s_hot = thermodynamic_entropy(build_spectrum(ph), ph, 1e-4);
    worst_hot = std::max(worst_hot, std::abs(s_hot - std::log(2.0)));
  }
  check.merge(worst_hot <= 1e-3, "S(beta=1e-4) misses ln 2");
  res.passed = check.ok;
  res.detail = "S(beta=50) = " + fmt(s_cold) + ", max |S(beta=1e-4) - ln2| = " +
               fmt(worst_hot);
  return res;
}

CriterionResult canonical_hamiltonian(unsigned seed) {
  CriterionResult res = named(7, "canonical Hamiltonian: closed form, pseudo-Kraus, gauge");
  Check check;
  ExperimentConfig fig5 = preset_config(Preset::kFig5);
  ModelParams p = fig5.params;  // eps = 1.0 baseline
  const TripletEvaluator eval(p);

  const CanonicalRates at0 = canonical_rates(eval(0.0));
  check.merge(std::abs(at0.omega_t - p.omega0 / 2.0) <= 1e-8,
              "Omega(0) != omega0/2");

  std::mt19937 rng(seed + 7);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  double worst_route = 0.0, worst_traceless = 0.0, worst_gauge = 0.0;
  for (double t : linspace(0.0, 30.0, 50)) {
    const PropagatorTriplet tr = eval(t);
    const CanonicalRates rates = canonical_rates(tr);
    const Matrix4c l = lindbladian(tr);
    const PseudoKraus pk = pseudo_kraus(l);
    const Matrix2c h_general = canonical_hamiltonian_general(pk);
    worst_route = std::max(
        worst_route, std::abs(h_general(0, 0).real() - rates.omega_t));
    const MinimalDissipator md = minimal_dissipator(pk);
    for (const auto& jump : md.jump_ops)
      worst_traceless =
          std::max(worst_traceless, std::abs(jump.trace()));

    // gauge shift: L_j -> L_j + a_j, H -> H + sum gamma_j/2i (a_j L_j^dag - a_j* L_j)
    Matrix2c h_shift = h_general;
    std::array<Matrix2c, 4> shifted = md.jump_ops;
    for (int j = 0; j < 4; ++j) {
      const Complex a(uni(rng), uni(rng));
      shifted[j] += a * Matrix2c::Identity();
      h_shift += (md.gammas[j] * kImag / 2.0) *
                 (a * md.jump_ops[j].adjoint() - std::conj(a) * md.jump_ops[j]);
    }
    for (int kk = 0; kk < 2; ++kk)
      for (int ll = 0; ll < 2; ++ll) {
        Matrix2c unit = Matrix2c::Zero();
        unit(kk, ll) = 1.0;
        Matrix2c rebuilt = -kImag * (h_shift * unit - unit * h_shift);
        for (int j = 0; j < 4; ++j) {
          const Matrix2c& lj = shifted[j];
          const Matrix2c ldl = lj.adjoint() * lj;
          rebuilt += md.gammas[j] *
                     (lj * unit * lj.adjoint() -
                      0.5 * (ldl * unit + unit * ldl));
        }
        const Matrix2c direct = apply_superop(l, unit);
        worst_gauge = std::max(
            worst_gauge, (rebuilt - direct).cwiseAbs().maxCoeff());
      }
  }
  check.merge(worst_route <= 1e-8, "closed form vs pseudo-Kraus mismatch");
  check.merge(worst_traceless <= 1e-10, "jump operators not traceless");
  check.merge(worst_gauge <= 1e-9, "gauge-shift invariance violated");
  res.passed = check.ok;
  res.detail = "route diff " + fmt(worst_route) + ", |Tr L_j| " +
               fmt(worst_traceless) + ", gauge diff " + fmt(worst_gauge) +
               ", Omega(0) err " + fmt(std::abs(at0.omega_t - p.omega0 / 2.0));
  return res;
}

CriterionResult ledger_diagnostics() {
  CriterionResult res = named(8, "canonical-ledger diagnostics at fig6 parameters");
  Check check;
  ExperimentConfig fig6 = preset_config(Preset::kFig6);
  const ModelParams p = fig6.params;
  const std::vector<double> times = linspace(0.0, 30.0, 101);
  const TripletEvaluator eval(p);
  double worst_equiv = 0.0, max_gap = 0.0, min_sigma_tilde = 1e300,
         min_sigma = 1e300;
  for (InitialStateKind kind :
       {InitialStateKind::kExcited, InitialStateKind::kGround}) {
    InitialStateSpec spec;
    spec.kind = kind;
    const QubitState rho0 = spec.realize(p);
    const auto tilde = tilde_quantities(p, rho0, times);
    const auto thermo = thermo_trajectory(p, rho0, times);
    for (size_t k = 0; k < times.size(); ++k) {
      const double z = propagate_system(rho0, eval(times[k])).z;
      const double e_s = 0.5 * p.omega0 * z;
      const Matrix2c h_t = heisenberg_system_hamiltonian(p, times[k]);
      const double e_h = (h_t * rho0.matrix()).trace().real();
      worst_equiv = std::max(worst_equiv, std::abs(e_s - e_h));
      if (std::isfinite(tilde[k].omega_t))
        max_gap = std::max(max_gap, std::abs(tilde[k].omega_t * z - e_s));
      min_sigma_tilde = std::min(min_sigma_tilde, tilde[k].sigma_tilde);
      min_sigma = std::min(min_sigma, thermo[k].sigma);
    }
  }
  check.merge(worst_equiv <= 1e-10, "Schrodinger/Heisenberg mismatch");
  check.merge(max_gap > 10.0 * 1e-10, "canonical expectation does not deviate");
  check.merge(min_sigma_tilde < 0.0, "Sigma_tilde never negative");
  check.merge(min_sigma >= -1e-9, "Sigma negative");
  res.passed = check.ok;
  res.detail = "picture mismatch " + fmt(worst_equiv) + ", H_can gap " +
               fmt(max_gap) + ", min Sigma_tilde " + fmt(min_sigma_tilde) +
               ", min Sigma " + fmt(min_sigma);
  return res;
}

CriterionResult ergotropy_criterion(unsigned seed) {
  CriterionResult res = named(9, "ergotropy: spectral route, charging criterion");
  Check check;
  std::mt19937 rng(seed + 9);
  const double omega0 = 2.5;
  const MatrixXc h_s = system_hamiltonian(omega0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const QubitState s = random_state(rng);
    worst = std::max(worst, std::abs(ergotropy_general(s.matrix(), h_s) -
                                     ergotropy_bloch(s, omega0)));
  }
  check.merge(worst <= 1e-12, "spectral vs Bloch mismatch");

  ModelParams p{2.5, 2.0, 2.0, 200, 0.1};  // fig7 documented preset, T = 10
  const ChargingSeries series =
      charging_trajectory(p, linspace(0.0, 50.0, 1001));
  bool sign_ok = true;
  for (const auto& rec : series.records)
    sign_ok = sign_ok && ((rec.total > 0.0) == (rec.eta > 0.5));
  check.merge(sign_ok, "W > 0 not equivalent to eta > 1/2");
  check.merge(series.charging_samples >= 1, "eta never exceeds 1/2");
  res.passed = check.ok;
  res.detail = "route diff " + fmt(worst) + ", charging samples " +
               std::to_string(series.charging_samples);
  return res;
}

CriterionResult performance() {
  CriterionResult res = named(10, "performance budgets (reduced sweep, joint pipeline)");
  Check check;
  using Clock = std::chrono::steady_clock;

  ModelParams big{2.5, 2.0, 0.2, 100000, 10.0};
  const auto t0 = Clock::now();
  const TripletEvaluator eval(big);
  double sink = 0.0;
  for (double t : linspace(0.0, 50.0, 1000)) {
    const PropagatorTriplet tr = eval(t);
    sink += tr.alpha + tr.eta + tr.delta.real();
  }
  const double reduced_s =
      std::chrono::duration<double>(Clock::now() - t0).count();
  check.merge(reduced_s <= 60.0, "reduced-only sweep over budget");

  ExperimentConfig fig2 = preset_config(Preset::kFig2);
  const auto t1 = Clock::now();
  const auto records = thermo_trajectory(
      fig2.params, fig2.initial.realize(fig2.params), linspace(0.0, 20.0, 400));
  const double joint_s =
      std::chrono::duration<double>(Clock::now() - t1).count();
  check.merge(joint_s <= 120.0, "joint pipeline over budget");

  res.passed = check.ok;
  res.detail = "reduced N=1e5 x 1e3: " + fmt(reduced_s) + " s (<= 60), joint N=50 x 400: " +
               fmt(joint_s) + " s (<= 120), checksum " + fmt(sink + records.back().sigma);
  return res;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const Options& options) {
  using Clock = std::chrono::steady_clock;
  std::vector<std::pair<int, std::function<CriterionResult()>>> criteria = {
      {1, [&] { return oracle_equivalence(options.seed); }},
      {2, [] { return map_sanity(); }},
      {3, [] { return first_law(); }},
      {4, [] { return second_law(); }},
      {5, [] { return hmf_correctness(); }},
      {6, [] { return third_law(); }},
      {7, [&] { return canonical_hamiltonian(options.seed); }},
      {8, [] { return ledger_diagnostics(); }},
      {9, [&] { return ergotropy_criterion(options.seed); }},
      {10, [] { return performance(); }},
  };
  std::vector<CriterionResult> results;
  for (auto& [id, fn] : criteria) {
    if (options.only != 0 && options.only != id) continue;
    if (id == 10 && !options.performance) continue;
    const auto start = Clock::now();
    CriterionResult res;
    try {
      res = fn();
    } catch (const std::exception& e) {
      res.id = id;
      res.name = "criterion " + std::to_string(id);
      res.passed = false;
      res.detail = std::string("exception: ") + e.what();
    }
    res.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    results.push_back(res);
  }
  return results;
}

bool print_results(const std::vector<CriterionResult>& results,
                   std::ostream& out) {
  bool all = true;
  for (const auto& res : results) {
    out << (res.passed ? "PASS" : "FAIL") << " " << res.id << ". " << res.name
        << " -- " << res.detail << " (" << fmt(res.seconds) << " s)\n";
    all = all && res.passed;
  }
  out << (all ? "acceptance: all criteria passed\n"
              : "acceptance: FAILURES present\n");
  return all;
}

}  // namespace cspin::acceptance
