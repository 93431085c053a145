#include "cspin/dynamics.hpp"

#include <cmath>

namespace cspin {

QubitState QubitState::from_amplitudes(Complex c0, Complex c1) {
  const double norm = std::sqrt(std::norm(c0) + std::norm(c1));
  if (norm == 0.0) throw ConfigError("zero state vector");
  c0 /= norm;
  c1 /= norm;
  QubitState s;
  s.z = std::norm(c0) - std::norm(c1);
  const Complex r01 = c0 * std::conj(c1);
  s.x = 2.0 * r01.real();
  s.y = -2.0 * r01.imag();
  return s;
}

QubitState QubitState::thermal(double omega0, double beta) {
  QubitState s;
  s.z = -std::tanh(beta * omega0 / 2.0);
  return s;
}

QubitState QubitState::from_matrix(const Matrix2c& rho) {
  QubitState s;
  s.z = (rho(0, 0) - rho(1, 1)).real();
  s.x = 2.0 * rho(0, 1).real();
  s.y = -2.0 * rho(0, 1).imag();
  return s;
}

Matrix2c QubitState::matrix() const {
  Matrix2c rho;
  rho(0, 0) = (1.0 + z) / 2.0;
  rho(1, 1) = (1.0 - z) / 2.0;
  rho(0, 1) = Complex(x, -y) / 2.0;
  rho(1, 0) = Complex(x, y) / 2.0;
  return rho;
}

TripletEvaluator::TripletEvaluator(const ModelParams& params)
    : params_(params), bath_(bath_thermal_state(params)) {
  params.validate();
  edge_ = (params.omega + params.omega0) / 2.0;
  if (params.epsilon == 0.0) {
    decoupled_ = true;
    return;
  }
  spectrum_ = build_spectrum(params);
  const Spectrum& sp = *spectrum_;
  const int N = params.n_spins;
  lam_p_ = sp.lambda_plus;
  lam_m_ = sp.lambda_minus;
  gap_ = sp.gap;
  const ArrayXd k = 2.0 * sp.a.square() / (gap_ * N).square();
  walpha_ = bath_.weights.tail(N) * k;  // p_n for n = 1..N
  weta_ = bath_.weights.head(N) * k;    // p_{n-1}
  up_p_ = sp.up_plus();
  up_m_ = sp.up_minus();
  dn_p_ = sp.down_plus();
  dn_m_ = sp.down_minus();
}

double TripletEvaluator::population_alpha(double t) const {
  if (decoupled_) return 1.0;
  return 1.0 - (walpha_ * (1.0 - (gap_ * t).cos())).sum();
}

double TripletEvaluator::population_eta(double t) const {
  if (decoupled_) return 0.0;
  return (weta_ * (1.0 - (gap_ * t).cos())).sum();
}

PropagatorTriplet TripletEvaluator::operator()(double t) const {
  PropagatorTriplet tr;
  tr.t = t;
  if (decoupled_) {
    const Complex d = std::exp(-kImag * params_.omega0 * t);
    tr.delta = d;
    tr.delta_dot = -kImag * params_.omega0 * d;
    tr.delta_ddot = -params_.omega0 * params_.omega0 * d;
    return tr;
  }

  const int N = params_.n_spins;
  const ArrayXd cp = (lam_p_ * t).cos(), sp = (lam_p_ * t).sin();
  const ArrayXd cm = (lam_m_ * t).cos(), sm = (lam_m_ * t).sin();
  // cos/sin of the doublet gap without extra trig calls
  const ArrayXd cos_gap = cp * cm + sp * sm;
  const ArrayXd sin_gap = sp * cm - cp * sm;

  tr.alpha = 1.0 - (walpha_ * (1.0 - cos_gap)).sum();
  tr.alpha_dot = -(walpha_ * gap_ * sin_gap).sum();
  tr.alpha_ddot = -(walpha_ * gap_.square() * cos_gap).sum();
  tr.eta = (weta_ * (1.0 - cos_gap)).sum();
  tr.eta_dot = (weta_ * gap_ * sin_gap).sum();
  tr.eta_ddot = (weta_ * gap_.square() * cos_gap).sum();

  // delta*(t) = sum_m p_m <1,m|U|1,m> <0,m|U^dag|0,m>; doublet m+1 supplies
  // the first factor, doublet m the second, the corners supply pure phases.
  const ArrayXc ep = cp.cast<Complex>() - kImag * sp.cast<Complex>();  // e^{-i lam+ t}
  const ArrayXc em = cm.cast<Complex>() - kImag * sm.cast<Complex>();
  const ArrayXc lp_c = lam_p_.cast<Complex>();
  const ArrayXc lm_c = lam_m_.cast<Complex>();

  const ArrayXc c_arr = dn_p_.cast<Complex>() * ep + dn_m_.cast<Complex>() * em;
  const ArrayXc c_dot = -kImag * (dn_p_.cast<Complex>() * lp_c * ep +
                                  dn_m_.cast<Complex>() * lm_c * em);
  const ArrayXc c_ddot = -(dn_p_.cast<Complex>() * lp_c.square() * ep +
                           dn_m_.cast<Complex>() * lm_c.square() * em);

  const ArrayXc d_arr =
      (up_p_.cast<Complex>() * ep + up_m_.cast<Complex>() * em).conjugate();
  const ArrayXc d_dot = kImag * (up_p_.cast<Complex>() * lp_c * ep.conjugate() +
                                 up_m_.cast<Complex>() * lm_c * em.conjugate());
  const ArrayXc d_ddot = -(up_p_.cast<Complex>() * lp_c.square() * ep.conjugate() +
                           up_m_.cast<Complex>() * lm_c.square() * em.conjugate());

  const Complex phase = std::exp(kImag * edge_ * t);
  const Complex phase_dot = kImag * edge_ * phase;
  const Complex phase_ddot = -edge_ * edge_ * phase;

  const ArrayXd& p = bath_.weights;
  Complex ds = p[0] * c_arr[0] * phase + p[N] * phase * d_arr[N - 1];
  Complex ds_dot = p[0] * (c_dot[0] * phase + c_arr[0] * phase_dot) +
                   p[N] * (phase_dot * d_arr[N - 1] + phase * d_dot[N - 1]);
  Complex ds_ddot =
      p[0] * (c_ddot[0] * phase + 2.0 * c_dot[0] * phase_dot + c_arr[0] * phase_ddot) +
      p[N] * (phase_ddot * d_arr[N - 1] + 2.0 * phase_dot * d_dot[N - 1] +
              phase * d_ddot[N - 1]);
  for (int m = 1; m < N; ++m) {
    ds += p[m] * c_arr[m] * d_arr[m - 1];
    ds_dot += p[m] * (c_dot[m] * d_arr[m - 1] + c_arr[m] * d_dot[m - 1]);
    ds_ddot += p[m] * (c_ddot[m] * d_arr[m - 1] + 2.0 * c_dot[m] * d_dot[m - 1] +
                       c_arr[m] * d_ddot[m - 1]);
  }
  tr.delta = std::conj(ds);
  tr.delta_dot = std::conj(ds_dot);
  tr.delta_ddot = std::conj(ds_ddot);
  return tr;
}

PropagatorTriplet propagator_triplet(const Spectrum& spectrum,
                                     const BathThermalState& bath, double t) {
  ModelParams params;
  params.n_spins = spectrum.n_spins;
  params.beta = bath.beta;
  params.omega = 2.0 * bath.energies[0];  // energies[0] = omega/2
  params.omega0 = (spectrum.edge_plus * 2.0) - params.omega;
  params.epsilon = spectrum.a[0] / spectrum.n_spins;  // a_1 = epsilon N
  return TripletEvaluator(params)(t);
}

QubitState propagate_system(const QubitState& rho0,
                            const PropagatorTriplet& tr) {
  const double r00 = rho0.rho00(), r11 = rho0.rho11();
  const Complex r01 = rho0.rho01();
  QubitState out;
  out.z = 2.0 * (tr.alpha * r00 + tr.eta * r11) - 1.0;
  const Complex c = tr.delta * r01;
  out.x = 2.0 * c.real();
  out.y = -2.0 * c.imag();
  return out;
}

QubitState bloch_velocity(const QubitState& rho0, const PropagatorTriplet& tr) {
  QubitState v;
  v.z = 2.0 * (tr.alpha_dot * rho0.rho00() + tr.eta_dot * rho0.rho11());
  const Complex c = tr.delta_dot * rho0.rho01();
  v.x = 2.0 * c.real();
  v.y = -2.0 * c.imag();
  return v;
}

Vector4c vectorize(const Matrix2c& rho) {
  Vector4c v;
  v << rho(0, 0), rho(0, 1), rho(1, 0), rho(1, 1);
  return v;
}

Matrix2c unvectorize(const Vector4c& v) {
  Matrix2c rho;
  rho << v[0], v[1], v[2], v[3];
  return rho;
}

DynamicalMap dynamical_map(const PropagatorTriplet& tr) {
  DynamicalMap map;
  map.t = tr.t;
  map.phi = Matrix4c::Zero();
  map.phi(0, 0) = tr.alpha;
  map.phi(0, 3) = tr.eta;
  map.phi(1, 1) = tr.delta;
  map.phi(2, 2) = std::conj(tr.delta);
  map.phi(3, 0) = 1.0 - tr.alpha;
  map.phi(3, 3) = 1.0 - tr.eta;
  return map;
}

Matrix4c lindbladian(const PropagatorTriplet& tr, double tol) {
  const double den = tr.alpha - tr.eta;
  if (std::abs(den) < tol || std::abs(tr.delta) < tol)
    throw MapSingular(tr.t);
  const double zeta =
      (tr.alpha_dot * (1.0 - tr.eta) + tr.eta_dot * (tr.alpha - 1.0)) / den;
  const double gamma = (-tr.alpha_dot * tr.eta + tr.eta_dot * tr.alpha) / den;
  const Complex theta = tr.delta_dot / tr.delta;
  Matrix4c l = Matrix4c::Zero();
  l(0, 0) = zeta;
  l(0, 3) = gamma;
  l(1, 1) = theta;
  l(2, 2) = std::conj(theta);
  l(3, 0) = -zeta;
  l(3, 3) = -gamma;
  return l;
}

Matrix4c choi_matrix(const Matrix4c& superop) {
  Matrix4c choi;
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k)
      for (int j = 0; j < 2; ++j)
        for (int l = 0; l < 2; ++l)
          choi(2 * i + k, 2 * j + l) = superop(2 * i + j, 2 * k + l);
  return choi;
}

Matrix2c apply_superop(const Matrix4c& superop, const Matrix2c& rho) {
  return unvectorize(superop * vectorize(rho));
}

JointPropagator::JointPropagator(const ModelParams& params, int max_n_spins)
    : params_(params), bath_(bath_thermal_state(params)) {
  params.validate();
  if (params.n_spins > max_n_spins)
    throw DimensionTooLarge("joint propagation capped at N = " +
                            std::to_string(max_n_spins));
  if (params.epsilon == 0.0)
    decoupled_ = true;
  else
    spectrum_ = build_spectrum(params);
}

JointState JointPropagator::initial(const QubitState& rho0) const {
  const int db = params_.bath_dim();
  const Matrix2c rs = rho0.matrix();
  JointState joint;
  joint.t = 0.0;
  joint.n_spins = params_.n_spins;
  joint.matrix = MatrixXc::Zero(2 * db, 2 * db);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c)
      for (int n = 0; n < db; ++n)
        joint.matrix(r * db + n, c * db + n) = rs(r, c) * bath_.weights[n];
  return joint;
}

MatrixXc JointPropagator::unitary(double t) const {
  const int N = params_.n_spins;
  const int db = N + 1;
  const double edge = (params_.omega + params_.omega0) / 2.0;
  MatrixXc u = MatrixXc::Zero(2 * db, 2 * db);
  u(0, 0) = std::exp(-kImag * edge * t);
  u(2 * db - 1, 2 * db - 1) = std::exp(kImag * edge * t);
  if (decoupled_) {
    for (int n = 1; n <= N; ++n) {
      u(n, n) = std::exp(-kImag * (params_.omega0 / 2.0 + bath_.energies[n]) * t);
      u(db + n - 1, db + n - 1) =
          std::exp(-kImag * (-params_.omega0 / 2.0 + bath_.energies[n - 1]) * t);
    }
    return u;
  }
  const Spectrum& sp = *spectrum_;
  const ArrayXd upp = sp.up_plus(), upm = sp.up_minus();
  const ArrayXd dnp = sp.down_plus(), dnm = sp.down_minus();
  const ArrayXd cross = sp.cross();
  for (int n = 1; n <= N; ++n) {
    const int i0 = n, i1 = db + n - 1;
    const Complex php = std::exp(-kImag * sp.lambda_plus[n - 1] * t);
    const Complex phm = std::exp(-kImag * sp.lambda_minus[n - 1] * t);
    u(i0, i0) = php * upp[n - 1] + phm * upm[n - 1];
    u(i1, i1) = php * dnp[n - 1] + phm * dnm[n - 1];
    u(i0, i1) = (php - phm) * cross[n - 1];
    u(i1, i0) = u(i0, i1);
  }
  return u;
}

JointState JointPropagator::at(const QubitState& rho0, double t) const {
  JointState joint = initial(rho0);
  joint.t = t;
  if (t == 0.0) return joint;

  const int N = params_.n_spins;
  const int db = N + 1;
  MatrixXc& rho = joint.matrix;

  struct Block {
    int i0, i1;
    Complex u00, u01, u10, u11;
  };
  std::vector<Block> blocks;
  blocks.reserve(N);
  const double edge = (params_.omega + params_.omega0) / 2.0;
  const Complex edge_top = std::exp(-kImag * edge * t);
  const Complex edge_bot = std::exp(kImag * edge * t);

  if (decoupled_) {
    // product evolution: phases on |s,n> separately
    VectorXc phases(2 * db);
    for (int n = 0; n < db; ++n) {
      phases[n] = std::exp(-kImag * (params_.omega0 / 2.0 + bath_.energies[n]) * t);
      phases[db + n] =
          std::exp(-kImag * (-params_.omega0 / 2.0 + bath_.energies[n]) * t);
    }
    rho = phases.asDiagonal() * rho * phases.conjugate().asDiagonal();
    return joint;
  }

  const Spectrum& sp = *spectrum_;
  const ArrayXd upp = sp.up_plus(), upm = sp.up_minus();
  const ArrayXd dnp = sp.down_plus(), dnm = sp.down_minus();
  const ArrayXd cross = sp.cross();
  for (int n = 1; n <= N; ++n) {
    const Complex php = std::exp(-kImag * sp.lambda_plus[n - 1] * t);
    const Complex phm = std::exp(-kImag * sp.lambda_minus[n - 1] * t);
    Block b;
    b.i0 = n;
    b.i1 = db + n - 1;
    b.u00 = php * upp[n - 1] + phm * upm[n - 1];
    b.u11 = php * dnp[n - 1] + phm * dnm[n - 1];
    b.u01 = (php - phm) * cross[n - 1];
    b.u10 = b.u01;
    blocks.push_back(b);
  }

  // rho <- U rho
  Eigen::RowVectorXcd r0, r1;
  for (const Block& b : blocks) {
    r0 = rho.row(b.i0);
    r1 = rho.row(b.i1);
    rho.row(b.i0) = b.u00 * r0 + b.u01 * r1;
    rho.row(b.i1) = b.u10 * r0 + b.u11 * r1;
  }
  rho.row(0) *= edge_top;
  rho.row(2 * db - 1) *= edge_bot;

  // rho <- rho U^dag
  VectorXc c0, c1;
  for (const Block& b : blocks) {
    c0 = rho.col(b.i0);
    c1 = rho.col(b.i1);
    rho.col(b.i0) = std::conj(b.u00) * c0 + std::conj(b.u01) * c1;
    rho.col(b.i1) = std::conj(b.u10) * c0 + std::conj(b.u11) * c1;
  }
  rho.col(0) *= std::conj(edge_top);
  rho.col(2 * db - 1) *= std::conj(edge_bot);
  return joint;
}

JointState propagate_joint(const QubitState& rho0, const ModelParams& params,
                           const Spectrum& spectrum,
                           const BathThermalState& bath, double t) {
  (void)spectrum;
  (void)bath;
  return JointPropagator(params).at(rho0, t);
}

Matrix2c reduce_system(const JointState& joint) {
  const int db = joint.n_spins + 1;
  Matrix2c rs = Matrix2c::Zero();
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c)
      rs(r, c) = joint.matrix.block(r * db, c * db, db, db).trace();
  return rs;
}

MatrixXc reduce_bath(const JointState& joint) {
  const int db = joint.n_spins + 1;
  return joint.matrix.topLeftCorner(db, db) +
         joint.matrix.bottomRightCorner(db, db);
}

ArrayXd reduce_bath_diagonal(const JointState& joint) {
  const int db = joint.n_spins + 1;
  ArrayXd d(db);
  for (int n = 0; n < db; ++n)
    d[n] = (joint.matrix(n, n) + joint.matrix(db + n, db + n)).real();
  return d;
}

OraclePropagator::OraclePropagator(const ModelParams& params, int max_n_spins)
    : params_(params), ops_(build_dense_hamiltonians(params)) {
  if (params.n_spins > max_n_spins)
    throw DimensionTooLarge("oracle propagation capped at N = " +
                            std::to_string(max_n_spins));
  Eigen::SelfAdjointEigenSolver<MatrixXc> solver(ops_.total);
  eigenvalues_ = solver.eigenvalues();
  eigenvectors_ = solver.eigenvectors();
  bath_weights_ = bath_thermal_state(params).weights;
}

JointState OraclePropagator::at(const Matrix2c& rho_s0, double t) const {
  const int db = params_.bath_dim();
  MatrixXc rho0 = MatrixXc::Zero(2 * db, 2 * db);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c)
      for (int n = 0; n < db; ++n)
        rho0(r * db + n, c * db + n) = rho_s0(r, c) * bath_weights_[n];
  VectorXc phases(2 * db);
  for (int k = 0; k < 2 * db; ++k)
    phases[k] = std::exp(-kImag * eigenvalues_[k] * t);
  const MatrixXc u =
      eigenvectors_ * phases.asDiagonal() * eigenvectors_.adjoint();
  JointState joint;
  joint.t = t;
  joint.n_spins = params_.n_spins;
  joint.matrix = u * rho0 * u.adjoint();
  return joint;
}

Matrix2c OraclePropagator::reduced_system(const Matrix2c& rho_s0,
                                          double t) const {
  return reduce_system(at(rho_s0, t));
}

JointState oracle_propagate(const QubitState& rho0, const ModelParams& params,
                            double t) {
  return OraclePropagator(params).at(rho0.matrix(), t);
}

}  // namespace cspin
