#include "cspin/canonical.hpp"

#include <cmath>
#include <limits>

#include "cspin/thermo.hpp"

namespace cspin {

CanonicalRates canonical_rates(const PropagatorTriplet& tr,
                               double singular_tol, double theta_tol) {
  const double den = tr.alpha - tr.eta;
  if (std::abs(den) < singular_tol || std::abs(tr.delta) < singular_tol)
    throw MapSingular(tr.t);

  CanonicalRates r;
  r.t = tr.t;
  const double den_dot = tr.alpha_dot - tr.eta_dot;
  r.zeta = (tr.alpha_dot * (1.0 - tr.eta) + tr.eta_dot * (tr.alpha - 1.0)) / den;
  r.gamma_cap = (-tr.alpha_dot * tr.eta + tr.eta_dot * tr.alpha) / den;
  // the alpha_dot*eta_dot cross terms cancel in both numerator derivatives
  r.zeta_dot = (tr.alpha_ddot * (1.0 - tr.eta) + tr.eta_ddot * (tr.alpha - 1.0) -
                r.zeta * den_dot) /
               den;
  r.gamma_cap_dot =
      (-tr.alpha_ddot * tr.eta + tr.eta_ddot * tr.alpha - r.gamma_cap * den_dot) /
      den;
  r.theta = tr.delta_dot / tr.delta;
  r.theta_dot = tr.delta_ddot / tr.delta - r.theta * r.theta;

  if (std::abs(r.theta) < theta_tol) throw ThetaSingular(tr.t);

  const double s = r.zeta + r.gamma_cap;
  const double s_dot = r.zeta_dot + r.gamma_cap_dot;
  const double big_r = std::sqrt(s * s + 4.0 * std::norm(r.theta));
  const double big_r_dot =
      (s * s_dot + 4.0 * (r.theta_dot * std::conj(r.theta)).real()) / big_r;

  r.lambda3 = 0.5 * (r.zeta - r.gamma_cap - big_r);
  r.lambda4 = 0.5 * (r.zeta - r.gamma_cap + big_r);
  const double l3_dot = 0.5 * (r.zeta_dot - r.gamma_cap_dot - big_r_dot);
  const double l4_dot = 0.5 * (r.zeta_dot - r.gamma_cap_dot + big_r_dot);

  const Complex theta_conj = std::conj(r.theta);
  const Complex theta_conj_dot = std::conj(r.theta_dot);
  r.y3 = (s - big_r) / (2.0 * theta_conj);
  r.y4 = (s + big_r) / (2.0 * theta_conj);
  const Complex y3_dot =
      ((s_dot - big_r_dot) - 2.0 * r.y3 * theta_conj_dot) / (2.0 * theta_conj);
  const Complex y4_dot =
      ((s_dot + big_r_dot) - 2.0 * r.y4 * theta_conj_dot) / (2.0 * theta_conj);

  auto weight = [](Complex y) { return y.imag() / (1.0 + std::norm(y)); };
  auto weight_dot = [](Complex y, Complex y_dot) {
    const double denom = 1.0 + std::norm(y);
    return (y_dot.imag() * denom -
            y.imag() * 2.0 * (y_dot * std::conj(y)).real()) /
           (denom * denom);
  };
  const double g3 = weight(r.y3), g4 = weight(r.y4);
  r.omega_t = -0.5 * (r.lambda3 * g3 + r.lambda4 * g4);
  r.omega_dot = -0.5 * (l3_dot * g3 + r.lambda3 * weight_dot(r.y3, y3_dot) +
                        l4_dot * g4 + r.lambda4 * weight_dot(r.y4, y4_dot));
  return r;
}

double canonical_hamiltonian_closed(const CanonicalRates& rates) {
  return rates.omega_t;
}

PseudoKraus pseudo_kraus(const Matrix4c& lindblad) {
  const double scale = std::max(1.0, lindblad.cwiseAbs().maxCoeff());
  // trace annihilation: the population rows must cancel column-wise
  const Vector4c trace_row = lindblad.row(0) + lindblad.row(3);
  if (trace_row.cwiseAbs().maxCoeff() > 1e-8 * scale)
    throw NotHPTA("superoperator does not annihilate the trace");
  const Matrix4c choi = choi_matrix(lindblad);
  if ((choi - choi.adjoint()).cwiseAbs().maxCoeff() > 1e-8 * scale)
    throw NotHPTA("superoperator is not Hermiticity-preserving");

  Eigen::SelfAdjointEigenSolver<Matrix4c> solver(
      Matrix4c(0.5 * (choi + choi.adjoint())));
  PseudoKraus pk;
  pk.gammas = solver.eigenvalues();
  for (int j = 0; j < 4; ++j) {
    const Vector4c v = solver.eigenvectors().col(j);
    Matrix2c e;
    e << v[0], v[1], v[2], v[3];
    pk.ops[j] = e;
  }
  return pk;
}

Matrix2c canonical_hamiltonian_general(const PseudoKraus& pk) {
  Matrix2c h = Matrix2c::Zero();
  for (int j = 0; j < 4; ++j) {
    const Matrix2c& e = pk.ops[j];
    h += pk.gammas[j] *
         (e.trace() * e.adjoint() - std::conj(e.trace()) * e);
  }
  return h / (2.0 * kImag * 2.0);
}

Matrix4c superop_from_pseudo_kraus(const PseudoKraus& pk) {
  Matrix4c out = Matrix4c::Zero();
  for (int k = 0; k < 2; ++k) {
    for (int l = 0; l < 2; ++l) {
      Matrix2c unit = Matrix2c::Zero();
      unit(k, l) = 1.0;
      Matrix2c img = Matrix2c::Zero();
      for (int j = 0; j < 4; ++j)
        img += pk.gammas[j] * pk.ops[j] * unit * pk.ops[j].adjoint();
      out.col(2 * k + l) = vectorize(img);
    }
  }
  return out;
}

MinimalDissipator minimal_dissipator(const PseudoKraus& pk) {
  MinimalDissipator d;
  d.gammas = pk.gammas;
  for (int j = 0; j < 4; ++j)
    d.jump_ops[j] =
        pk.ops[j] - (pk.ops[j].trace() / 2.0) * Matrix2c::Identity();
  return d;
}

Matrix2c apply_dissipator_gksl(const MinimalDissipator& d, const Matrix2c& rho) {
  Matrix2c out = Matrix2c::Zero();
  for (int j = 0; j < 4; ++j) {
    const Matrix2c& l = d.jump_ops[j];
    const Matrix2c ldl = l.adjoint() * l;
    out += d.gammas[j] * (l * rho * l.adjoint() - 0.5 * (ldl * rho + rho * ldl));
  }
  return out;
}

Matrix2c apply_dissipator_direct(const Matrix4c& lindblad,
                                 const Matrix2c& h_can, const Matrix2c& rho) {
  return apply_superop(lindblad, rho) + kImag * (h_can * rho - rho * h_can);
}

Matrix2c heisenberg_system_hamiltonian(const ModelParams& params, double t) {
  const JointPropagator prop(params);
  const int db = params.bath_dim();
  const MatrixXc u = prop.unitary(t);
  Eigen::VectorXd hs_diag(2 * db);
  hs_diag.head(db).setConstant(params.omega0 / 2.0);
  hs_diag.tail(db).setConstant(-params.omega0 / 2.0);
  const MatrixXc m = u.adjoint() * hs_diag.asDiagonal() * u;
  const ArrayXd& p = prop.bath().weights;
  Matrix2c h = Matrix2c::Zero();
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      Complex acc = 0.0;
      for (int n = 0; n < db; ++n) acc += p[n] * m(a * db + n, b * db + n);
      h(a, b) = acc;
    }
  return h;
}

namespace {

struct OmegaSample {
  double omega = 0.0;
  double omega_dot = 0.0;
  bool valid = false;
};

// closed form where regular, pseudo-Kraus fallback at Theta-singular nodes,
// invalid at Phi-singular nodes
OmegaSample omega_at(const TripletEvaluator& eval, const PropagatorTriplet& tr,
                     const TildeOptions& opt) {
  OmegaSample s;
  const double t = tr.t;
  try {
    const CanonicalRates r = canonical_rates(tr, opt.singular_tol, opt.theta_tol);
    s.omega = r.omega_t;
    s.omega_dot = r.omega_dot;
    s.valid = true;
  } catch (const ThetaSingular&) {
    auto general = [&](double tau) {
      const Matrix4c l = lindbladian(eval(tau), opt.singular_tol);
      return canonical_hamiltonian_general(pseudo_kraus(l))(0, 0).real();
    };
    try {
      const double h = 1e-6 * std::max(1.0, std::abs(t));
      s.omega = general(t);
      s.omega_dot = (general(t + h) - general(std::max(t - h, 0.0))) /
                    (h + std::min(t, h));
      s.valid = true;
    } catch (const MapSingular&) {
      s.valid = false;
    }
  } catch (const MapSingular&) {
    s.valid = false;
  }
  return s;
}

}  // namespace

std::vector<TildeRecord> tilde_quantities(const ModelParams& params,
                                          const QubitState& rho0,
                                          const std::vector<double>& times,
                                          const TildeOptions& opt) {
  params.validate();
  if (times.size() < 2 || times.front() != 0.0)
    throw ConfigError("tilde quadrature needs a uniform grid starting at 0");
  const double dt_out = times[1] - times[0];
  for (size_t k = 1; k < times.size(); ++k)
    if (std::abs(times[k] - times[k - 1] - dt_out) > 1e-9 * dt_out)
      throw ConfigError("tilde quadrature needs a uniform grid");

  const TripletEvaluator eval(params);
  const JointPropagator prop(params);
  const DenseOperators ops = build_dense_hamiltonians(params);
  const JointState joint0 = prop.initial(rho0);

  int substeps = static_cast<int>(
      std::ceil(opt.nodes_per_phase * std::abs(params.omega0) * dt_out));
  substeps = std::max(substeps, 4);
  if (substeps % 2 != 0) ++substeps;
  const double h = dt_out / substeps;

  // cumulative trapezoids on the fine grid and on its 2h subset
  double iw_fine = 0.0, iq_fine = 0.0, iw_half = 0.0, iq_half = 0.0;
  bool have_prev_fine = false, have_prev_half = false;
  double prev_t_fine = 0.0, prev_w_fine = 0.0, prev_q_fine = 0.0;
  double prev_t_half = 0.0, prev_w_half = 0.0, prev_q_half = 0.0;
  int flagged = 0;

  const double s_sys0 = von_neumann_entropy_qubit(rho0);
  OmegaSample om0 = omega_at(eval, eval(0.0), opt);
  const double e_can0 = om0.valid ? om0.omega * rho0.z
                                  : std::numeric_limits<double>::quiet_NaN();

  std::vector<TildeRecord> records;
  records.reserve(times.size());

  for (size_t k = 0; k < times.size(); ++k) {
    const long first = (k == 0) ? 0 : 1;
    for (long i = first; i <= ((k == 0) ? 0 : substeps); ++i) {
      const double tau = (k == 0) ? 0.0 : times[k - 1] + i * h;
      const long global = static_cast<long>((k == 0) ? 0 : (k - 1)) * substeps + i;
      const PropagatorTriplet tr = eval(tau);
      const OmegaSample om = omega_at(eval, tr, opt);
      if (!om.valid) {
        ++flagged;
        continue;
      }
      const double z = propagate_system(rho0, tr).z;
      const double z_dot = bloch_velocity(rho0, tr).z;
      const double fw = om.omega_dot * z;
      const double fq = om.omega * z_dot;
      if (have_prev_fine) {
        iw_fine += 0.5 * (prev_w_fine + fw) * (tau - prev_t_fine);
        iq_fine += 0.5 * (prev_q_fine + fq) * (tau - prev_t_fine);
      }
      prev_t_fine = tau;
      prev_w_fine = fw;
      prev_q_fine = fq;
      have_prev_fine = true;
      if (global % 2 == 0) {
        if (have_prev_half) {
          iw_half += 0.5 * (prev_w_half + fw) * (tau - prev_t_half);
          iq_half += 0.5 * (prev_q_half + fq) * (tau - prev_t_half);
        }
        prev_t_half = tau;
        prev_w_half = fw;
        prev_q_half = fq;
        have_prev_half = true;
      }
    }

    TildeRecord rec;
    rec.t = times[k];
    rec.dw_system = iw_fine;
    rec.dq_system = iq_fine;
    rec.du_system = iw_fine + iq_fine;
    const PropagatorTriplet tr = eval(times[k]);
    const QubitState state_t = propagate_system(rho0, tr);
    const OmegaSample om = omega_at(eval, tr, opt);
    rec.omega_t = om.valid ? om.omega : std::numeric_limits<double>::quiet_NaN();
    rec.du_direct = om.valid ? om.omega * state_t.z - e_can0
                             : std::numeric_limits<double>::quiet_NaN();
    const double ds = von_neumann_entropy_qubit(state_t) - s_sys0;
    rec.sigma_tilde = ds - params.beta * rec.dq_system;
    const JointState joint_t = prop.at(rho0, times[k]);
    const double w_int = work_interaction(joint0, joint_t, ops.coupling);
    rec.du_bath = w_int - rec.du_system;
    rec.sigma_prime = ds + params.beta * rec.du_bath;
    rec.flagged_nodes = flagged;
    records.push_back(rec);
  }

  const double err = std::max(std::abs(iw_fine - iw_half),
                              std::abs(iq_fine - iq_half)) /
                     3.0;
  if (err > opt.quad_tol)
    throw GridTooCoarse("quadrature self-estimate " + std::to_string(err) +
                        " exceeds tolerance");
  return records;
}

}  // namespace cspin
