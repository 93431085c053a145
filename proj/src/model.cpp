#include "cspin/model.hpp"

#include <cmath>

namespace cspin {

void ModelParams::validate() const {
  if (n_spins < 1) throw ConfigError("n_spins must be >= 1");
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw ConfigError("beta must be positive and finite");
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon))
    throw ConfigError("epsilon must be non-negative and finite");
  if (!std::isfinite(omega0) || !std::isfinite(omega))
    throw ConfigError("omega0 and omega must be finite");
}

Spectrum build_spectrum(const ModelParams& params) {
  params.validate();
  if (params.epsilon <= 0.0)
    throw DecoupledModel(
        "epsilon = 0: chi_pm formulas are singular, use the decoupled "
        "tensor-product treatment");

  const int N = params.n_spins;
  const double j = N / 2.0;
  Spectrum sp;
  sp.n_spins = N;
  sp.b = params.omega - N * params.omega0;
  sp.a.resize(N);
  sp.chi_plus.resize(N);
  sp.chi_minus.resize(N);
  sp.lambda_plus.resize(N);
  sp.lambda_minus.resize(N);
  sp.gap.resize(N);
  sp.asym.resize(N);

  const double b = sp.b;
  for (int n = 1; n <= N; ++n) {
    const double m = -j + n;  // (-N/2 + n - 1)(-N/2 + n) = (m-1)m
    const double a = params.epsilon * std::sqrt(N) *
                     std::sqrt(j * (j + 1.0) - (m - 1.0) * m);
    const double s = std::hypot(b, 2.0 * a);
    const double center = (N - (2.0 * n - 1.0)) * params.omega / (2.0 * N);
    sp.a[n - 1] = a;
    sp.lambda_plus[n - 1] = center + s / (2.0 * N);
    sp.lambda_minus[n - 1] = center - s / (2.0 * N);
    sp.gap[n - 1] = s / N;
    sp.asym[n - 1] = b / s;
    // stable quadratic roots; chi_plus * chi_minus = -1 holds exactly
    if (b >= 0.0) {
      sp.chi_plus[n - 1] = 2.0 * a / (b + s);
      sp.chi_minus[n - 1] = -(b + s) / (2.0 * a);
    } else {
      sp.chi_plus[n - 1] = (s - b) / (2.0 * a);
      sp.chi_minus[n - 1] = -2.0 * a / (s - b);
    }
  }
  sp.edge_plus = (params.omega + params.omega0) / 2.0;
  sp.edge_minus = -sp.edge_plus;
  return sp;
}

Eigen::VectorXd Spectrum::eigenvector(int n, int branch) const {
  const int N = n_spins;
  const int dim = 2 * (N + 1);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(dim);
  const double chi = branch > 0 ? chi_plus[n - 1] : chi_minus[n - 1];
  const double norm = std::sqrt(1.0 + chi * chi);
  v[n] = chi / norm;            // |0, n>
  v[(N + 1) + (n - 1)] = 1.0 / norm;  // |1, n-1>
  return v;
}

ArrayXd bath_energies(const ModelParams& params) {
  const int N = params.n_spins;
  ArrayXd e(N + 1);
  for (int n = 0; n <= N; ++n)
    e[n] = 0.5 * params.omega * (1.0 - 2.0 * n / N);
  return e;
}

BathThermalState bath_thermal_state(const ModelParams& params) {
  params.validate();
  BathThermalState bath;
  bath.beta = params.beta;
  bath.energies = bath_energies(params);
  ArrayXd x = -params.beta * bath.energies;
  const double shift = x.maxCoeff();
  ArrayXd shifted = (x - shift).exp();
  const double norm = shifted.sum();
  bath.weights = shifted / norm;
  bath.log_partition = shift + std::log(norm);
  bath.partition = std::exp(bath.log_partition);
  bath.log_weights = x - bath.log_partition;
  return bath;
}

double log_xi(const ModelParams& params) {
  const int N = params.n_spins;
  const double x1 = std::abs(params.beta * params.omega) * (N + 1) / (2.0 * N);
  const double x2 = std::abs(params.beta * params.omega) / (2.0 * N);
  if (x2 == 0.0) return std::log(static_cast<double>(N + 1));
  auto log_sinh = [](double x) {
    return x + std::log1p(-std::exp(-2.0 * x)) - std::log(2.0);
  };
  return log_sinh(x1) - log_sinh(x2);
}

Eigen::MatrixXd collective_jz(int n_spins) {
  const int dim = n_spins + 1;
  Eigen::MatrixXd jz = Eigen::MatrixXd::Zero(dim, dim);
  for (int n = 0; n < dim; ++n) jz(n, n) = n_spins / 2.0 - n;
  return jz;
}

namespace {

// J+|n> = sqrt(j(j+1) - m(m+1)) |n-1> with m = j - n
Eigen::MatrixXd ladder_plus(int n_spins) {
  const int dim = n_spins + 1;
  const double j = n_spins / 2.0;
  Eigen::MatrixXd jp = Eigen::MatrixXd::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) {
    const double m = j - n;
    jp(n - 1, n) = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
  }
  return jp;
}

}  // namespace

Eigen::MatrixXd collective_jx(int n_spins) {
  Eigen::MatrixXd jp = ladder_plus(n_spins);
  return 0.5 * (jp + jp.transpose());
}

MatrixXc collective_jy(int n_spins) {
  Eigen::MatrixXd jp = ladder_plus(n_spins);
  return (jp - jp.transpose()).cast<Complex>() / (2.0 * kImag);
}

Matrix2c system_hamiltonian(double omega0) {
  Matrix2c h = Matrix2c::Zero();
  h(0, 0) = omega0 / 2.0;
  h(1, 1) = -omega0 / 2.0;
  return h;
}

DenseOperators build_dense_hamiltonians(const ModelParams& params) {
  params.validate();
  const int N = params.n_spins;
  const int db = N + 1;

  Matrix2c sx = Matrix2c::Zero(), sy = Matrix2c::Zero(), sz = Matrix2c::Zero();
  sx << 0, 1, 1, 0;
  sy << 0, -kImag, kImag, 0;
  sz << 1, 0, 0, -1;

  auto kron2 = [db](const Matrix2c& s, const MatrixXc& bathop) {
    MatrixXc out = MatrixXc::Zero(2 * db, 2 * db);
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c)
        if (s(r, c) != Complex(0, 0))
          out.block(r * db, c * db, db, db) = s(r, c) * bathop;
    return out;
  };

  const MatrixXc idb = MatrixXc::Identity(db, db);
  DenseOperators ops;
  ops.system = kron2((params.omega0 / 2.0) * sz, idb);
  ops.bath = kron2(Matrix2c::Identity(),
                   (params.omega / N) * collective_jz(N).cast<Complex>());
  ops.coupling =
      (params.epsilon / std::sqrt(static_cast<double>(N))) *
      (kron2(sx, collective_jx(N).cast<Complex>()) + kron2(sy, collective_jy(N)));
  ops.total = ops.system + ops.bath + ops.coupling;
  return ops;
}

}  // namespace cspin
