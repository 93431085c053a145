#include "cspin/thermo.hpp"

#include <cmath>
#include <limits>

namespace cspin {

namespace {

constexpr double kLogFloor = 1e-300;

double entropy_of_eigenvalues(const Eigen::VectorXd& ev) {
  double s = 0.0;
  for (int i = 0; i < ev.size(); ++i) {
    const double p = ev[i];
    if (p > kLogFloor) s -= p * std::log(p);
  }
  return s;
}

}  // namespace

double von_neumann_entropy(const MatrixXc& rho) {
  Eigen::SelfAdjointEigenSolver<MatrixXc> solver(rho,
                                                 Eigen::EigenvaluesOnly);
  return entropy_of_eigenvalues(solver.eigenvalues());
}

double von_neumann_entropy_qubit(const QubitState& state) {
  const double r = std::min(state.radius(), 1.0);
  double s = 0.0;
  for (double p : {(1.0 + r) / 2.0, (1.0 - r) / 2.0})
    if (p > kLogFloor) s -= p * std::log(p);
  return s;
}

double delta_u_system(double z_t, double z_0, double omega0) {
  return 0.5 * omega0 * (z_t - z_0);
}

double q_bath(const ArrayXd& bath_diag_t, const BathThermalState& bath0) {
  return ((bath_diag_t - bath0.weights) * bath0.energies).sum();
}

double q_bath(const MatrixXc& bath_t, const BathThermalState& bath0) {
  return q_bath(ArrayXd(bath_t.diagonal().real().array()), bath0);
}

double work_interaction(const JointState& joint0, const JointState& joint_t,
                        const MatrixXc& coupling) {
  return (coupling * (joint0.matrix - joint_t.matrix)).trace().real();
}

EntropyProduction entropy_production_relative(const JointState& joint_t,
                                              const Matrix2c& rho_s_t,
                                              const Matrix2c& rho_s_0,
                                              const BathThermalState& bath0) {
  // Tr[rho ln rho] from the invariant t = 0 product spectrum
  Eigen::SelfAdjointEigenSolver<Matrix2c> s0(rho_s_0, Eigen::EigenvaluesOnly);
  double tr_rho_ln_rho = 0.0;
  for (int i = 0; i < 2; ++i) {
    for (int n = 0; n < bath0.weights.size(); ++n) {
      const double q = s0.eigenvalues()[i] * bath0.weights[n];
      if (q > kLogFloor)
        tr_rho_ln_rho += q * std::log(q);
      else if (q > 0.0)
        throw EigenvalueUnderflow("joint eigenvalue below 1e-300; lower beta");
    }
  }
  for (int n = 0; n < bath0.weights.size(); ++n)
    if (bath0.weights[n] < kLogFloor)
      throw EigenvalueUnderflow("bath weight below 1e-300; lower beta");

  const double s_sys_t = von_neumann_entropy(MatrixXc(rho_s_t));
  const ArrayXd bath_diag = reduce_bath_diagonal(joint_t);
  const double cross = (bath_diag * bath0.log_weights).sum();

  EntropyProduction out;
  out.sigma = tr_rho_ln_rho + s_sys_t - cross;

  const MatrixXc rho_b_t = reduce_bath(joint_t);
  const double s_bath_t = von_neumann_entropy(rho_b_t);
  const double s_joint = -tr_rho_ln_rho;  // unitary invariance
  out.mutual_information = s_sys_t + s_bath_t - s_joint;
  out.bath_relative_entropy = -s_bath_t - cross;
  return out;
}

namespace {

// mean energy of the diagonal Gibbs state at inverse temperature u
double gibbs_energy(const ArrayXd& energies, double u) {
  ArrayXd x = -u * energies;
  x -= x.maxCoeff();
  const ArrayXd w = x.exp();
  return (w * energies).sum() / w.sum();
}

ArrayXd gibbs_log_weights(const ArrayXd& energies, double u) {
  ArrayXd x = -u * energies;
  const double shift = x.maxCoeff();
  const double logz = shift + std::log((x - shift).exp().sum());
  return x - logz;
}

}  // namespace

FittedTemperature fit_bath_temperature(double bath_energy,
                                       const ArrayXd& energies,
                                       double energy_tol) {
  const double e_max = energies.maxCoeff();
  const double e_min = energies.minCoeff();
  if (!(bath_energy > e_min && bath_energy < e_max))
    throw EnergyOutOfRange("bath energy outside the thermal-achievable range");

  FittedTemperature fit;
  const double scale = std::max(std::abs(e_max), std::abs(e_min));
  // gibbs_energy is strictly decreasing in u; expand a bracket, then bisect
  double lo = -1.0 / scale, hi = 1.0 / scale;
  while (gibbs_energy(energies, lo) < bath_energy) {
    lo *= 2.0;
    if (lo < -1e8 / scale)
      throw EnergyOutOfRange("bath energy too close to the extremal level");
  }
  while (gibbs_energy(energies, hi) > bath_energy) {
    hi *= 2.0;
    if (hi > 1e8 / scale)
      throw EnergyOutOfRange("bath energy too close to the extremal level");
  }
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (gibbs_energy(energies, mid) > bath_energy)
      lo = mid;
    else
      hi = mid;
  }
  fit.u = 0.5 * (lo + hi);
  if (std::abs(gibbs_energy(energies, fit.u) - bath_energy) >
      std::max(energy_tol, 1e-12))
    throw EnergyOutOfRange("temperature fit did not reach energy tolerance");
  fit.at_infinity = std::abs(fit.u) < 1e-12;
  return fit;
}

FittedTemperature fit_bath_temperature(const MatrixXc& bath_t,
                                       const ArrayXd& energies,
                                       double energy_tol) {
  const double energy = (bath_t.diagonal().real().array() * energies).sum();
  return fit_bath_temperature(energy, energies, energy_tol);
}

double entropy_production_finite(double sigma, const FittedTemperature& fit_t,
                                 double beta0, const ArrayXd& energies) {
  const ArrayXd lw_t = gibbs_log_weights(energies, fit_t.u);
  const ArrayXd lw_0 = gibbs_log_weights(energies, beta0);
  const double rel = (lw_t.exp() * (lw_t - lw_0)).sum();
  return sigma - rel;
}

std::vector<ThermoRecord> thermo_trajectory(const ModelParams& params,
                                            const QubitState& rho0,
                                            const std::vector<double>& times) {
  params.validate();
  const JointPropagator prop(params);
  const DenseOperators ops = build_dense_hamiltonians(params);
  const BathThermalState& bath0 = prop.bath();
  const JointState joint0 = prop.initial(rho0);
  const Matrix2c rho_s0 = rho0.matrix();
  const double z0 = rho0.z;
  const double s_sys0 = von_neumann_entropy(MatrixXc(rho_s0));
  const double e_bath0 = bath0.mean_energy();

  std::vector<ThermoRecord> records;
  records.reserve(times.size());
  double heat_integral = 0.0;  // int dQ_B / T along the grid
  double prev_e_bath = e_bath0, prev_u = params.beta;
  for (double t : times) {
    const JointState joint_t = prop.at(rho0, t);
    const Matrix2c rho_s_t = reduce_system(joint_t);
    const ArrayXd bath_diag = reduce_bath_diagonal(joint_t);
    ThermoRecord rec;
    rec.t = t;
    const double z_t = (rho_s_t(0, 0) - rho_s_t(1, 1)).real();
    rec.du_system = delta_u_system(z_t, z0, params.omega0);
    const double e_bath_t = (bath_diag * bath0.energies).sum();
    rec.q_bath = e_bath_t - e_bath0;
    rec.work = rec.du_system + rec.q_bath;
    rec.work_interaction = work_interaction(joint0, joint_t, ops.coupling);
    rec.ds_system = von_neumann_entropy(MatrixXc(rho_s_t)) - s_sys0;
    rec.sigma_clausius = rec.ds_system + params.beta * rec.q_bath;
    const EntropyProduction ep =
        entropy_production_relative(joint_t, rho_s_t, rho_s0, bath0);
    rec.sigma = ep.sigma;
    rec.mutual_information = ep.mutual_information;
    rec.bath_relative_entropy = ep.bath_relative_entropy;
    const FittedTemperature fit = fit_bath_temperature(e_bath_t, bath0.energies);
    rec.beta_fit = fit.u;
    rec.t_fit = fit.at_infinity ? std::numeric_limits<double>::infinity()
                                : 1.0 / fit.u;
    rec.sigma_finite =
        entropy_production_finite(rec.sigma, fit, params.beta, bath0.energies);
    heat_integral += 0.5 * (prev_u + fit.u) * (e_bath_t - prev_e_bath);
    rec.sigma_finite_integral = rec.ds_system + heat_integral;
    prev_e_bath = e_bath_t;
    prev_u = fit.u;
    records.push_back(rec);
  }
  return records;
}

}  // namespace cspin
