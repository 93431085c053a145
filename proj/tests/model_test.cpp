#include <doctest.h>

#include <cmath>

#include "cspin/model.hpp"

using namespace cspin;

namespace {

Eigen::SelfAdjointEigenSolver<MatrixXc> dense_eigen(const ModelParams& p) {
  return Eigen::SelfAdjointEigenSolver<MatrixXc>(
      build_dense_hamiltonians(p).total);
}

}  // namespace

TEST_CASE("spectrum closed form at N = 1 reduces to the two-level doublet") {
  ModelParams p{2.5, 2.0, 1.0, 1, 1.0};
  const Spectrum sp = build_spectrum(p);
  CHECK(sp.a[0] == doctest::Approx(p.epsilon).epsilon(1e-15));
  CHECK(sp.b == doctest::Approx(p.omega - p.omega0).epsilon(1e-15));
  const double split =
      std::sqrt(std::pow(p.omega - p.omega0, 2) + 4.0 * p.epsilon * p.epsilon) /
      2.0;
  CHECK(sp.lambda_plus[0] == doctest::Approx(split).epsilon(1e-14));
  CHECK(sp.lambda_minus[0] == doctest::Approx(-split).epsilon(1e-14));
}

TEST_CASE("eigenvalue sum vanishes (traceless Hamiltonian)") {
  for (const auto& p : {ModelParams{2.5, 2.0, 1.0, 4, 1.0},
                        ModelParams{1.0, 3.7, 0.3, 9, 0.5},
                        ModelParams{5.0, 0.7, 2.0, 16, 2.0}}) {
    const Spectrum sp = build_spectrum(p);
    const double sum = sp.lambda_plus.sum() + sp.lambda_minus.sum() +
                       sp.edge_plus + sp.edge_minus;
    CHECK(std::abs(sum) < 1e-10);
  }
}

TEST_CASE("analytic eigenvalues pair with the dense eigensolver at N = 4") {
  ModelParams p{2.5, 2.0, 1.0, 4, 1.0};
  const Spectrum sp = build_spectrum(p);
  std::vector<double> analytic;
  for (int n = 0; n < p.n_spins; ++n) {
    analytic.push_back(sp.lambda_plus[n]);
    analytic.push_back(sp.lambda_minus[n]);
  }
  analytic.push_back(sp.edge_plus);
  analytic.push_back(sp.edge_minus);
  std::sort(analytic.begin(), analytic.end());
  const auto solver = dense_eigen(p);
  for (int k = 0; k < p.joint_dim(); ++k)
    CHECK(analytic[k] == doctest::Approx(solver.eigenvalues()[k]).epsilon(1e-10));
}

TEST_CASE("reconstructed eigenvectors are orthonormal eigenstates") {
  ModelParams p{2.5, 2.0, 1.0, 4, 1.0};
  const Spectrum sp = build_spectrum(p);
  const MatrixXc h = build_dense_hamiltonians(p).total;
  MatrixXc completeness = MatrixXc::Zero(p.joint_dim(), p.joint_dim());
  for (int n = 1; n <= p.n_spins; ++n) {
    for (int branch : {+1, -1}) {
      const Eigen::VectorXd v = sp.eigenvector(n, branch);
      const double lam =
          branch > 0 ? sp.lambda_plus[n - 1] : sp.lambda_minus[n - 1];
      CHECK(v.norm() == doctest::Approx(1.0).epsilon(1e-12));
      const Eigen::VectorXd residual =
          (h.real() * v - lam * v).cwiseAbs();
      CHECK(residual.maxCoeff() < 1e-10 * std::max(1.0, std::abs(lam)));
      completeness += (v * v.transpose()).cast<Complex>();
    }
  }
  // corner projectors complete the basis
  completeness(0, 0) += 1.0;
  completeness(p.joint_dim() - 1, p.joint_dim() - 1) += 1.0;
  CHECK((completeness - MatrixXc::Identity(p.joint_dim(), p.joint_dim()))
            .cwiseAbs()
            .maxCoeff() < 1e-10);
}

TEST_CASE("chi branches multiply to -1, couplings positive, branches ordered") {
  for (const auto& p : {ModelParams{2.5, 2.0, 1.0, 8, 1.0},
                        ModelParams{0.5, 4.9, 0.07, 12, 0.1},
                        ModelParams{4.0, 4.0, 1.5, 3, 7.0}}) {
    const Spectrum sp = build_spectrum(p);
    CHECK(sp.a[0] == doctest::Approx(p.epsilon * p.n_spins).epsilon(1e-13));
    for (int n = 0; n < p.n_spins; ++n) {
      CHECK(sp.chi_plus[n] * sp.chi_minus[n] == doctest::Approx(-1.0).epsilon(1e-14));
      CHECK(sp.a[n] > 0.0);
      CHECK(sp.lambda_plus[n] >= sp.lambda_minus[n]);
    }
  }
}

TEST_CASE("b = 0 (omega = N omega0) stays regular with chi = +-1") {
  ModelParams p{0.5, 2.0, 0.7, 4, 1.0};  // omega = N*omega0
  const Spectrum sp = build_spectrum(p);
  CHECK(sp.b == 0.0);
  for (int n = 0; n < p.n_spins; ++n) {
    CHECK(sp.chi_plus[n] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(sp.chi_minus[n] == doctest::Approx(-1.0).epsilon(1e-14));
  }
}

TEST_CASE("epsilon = 0 demands the decoupled path") {
  ModelParams p{2.5, 2.0, 0.0, 4, 1.0};
  CHECK_THROWS_AS(build_spectrum(p), DecoupledModel);
  CHECK_NOTHROW(build_dense_hamiltonians(p));  // dense builder allows it
}

TEST_CASE("parameter validation") {
  ModelParams p{2.5, 2.0, 1.0, 0, 1.0};
  CHECK_THROWS_AS(p.validate(), ConfigError);
  p.n_spins = 2;
  p.beta = -1.0;
  CHECK_THROWS_AS(p.validate(), ConfigError);
}

TEST_CASE("dense operators: Hermitian, traceless, additive") {
  ModelParams p{2.5, 2.0, 0.7, 3, 1.0};
  const DenseOperators ops = build_dense_hamiltonians(p);
  for (const MatrixXc* m : {&ops.total, &ops.system, &ops.bath, &ops.coupling}) {
    CHECK((*m - m->adjoint()).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(std::abs(m->trace()) < 1e-12);
  }
  const MatrixXc resum = ops.system + ops.bath + ops.coupling;
  CHECK((ops.total - resum).cwiseAbs().maxCoeff() == 0.0);

  SUBCASE("N = 3 eigenvalues match the analytic spectrum") {
    const Spectrum sp = build_spectrum(p);
    const auto solver = dense_eigen(p);
    std::vector<double> analytic{sp.edge_plus, sp.edge_minus};
    for (int n = 0; n < p.n_spins; ++n) {
      analytic.push_back(sp.lambda_plus[n]);
      analytic.push_back(sp.lambda_minus[n]);
    }
    std::sort(analytic.begin(), analytic.end());
    for (int k = 0; k < p.joint_dim(); ++k)
      CHECK(analytic[k] ==
            doctest::Approx(solver.eigenvalues()[k]).epsilon(1e-10));
  }
}

TEST_CASE("N = 1 collective operators are half the Pauli matrices") {
  const Eigen::MatrixXd jx = collective_jx(1);
  const MatrixXc jy = collective_jy(1);
  const Eigen::MatrixXd jz = collective_jz(1);
  CHECK(jx(0, 1) == doctest::Approx(0.5));
  CHECK(jx(1, 0) == doctest::Approx(0.5));
  CHECK(jy(0, 1).imag() == doctest::Approx(-0.5));
  CHECK(jz(0, 0) == doctest::Approx(0.5));
  CHECK(jz(1, 1) == doctest::Approx(-0.5));
}

TEST_CASE("thermal bath state: two-level softmax at N = 1") {
  ModelParams p{2.5, 2.0, 1.0, 1, 0.8};
  const BathThermalState bath = bath_thermal_state(p);
  const double z = 2.0 * std::cosh(p.beta * p.omega / 2.0);
  CHECK(bath.partition == doctest::Approx(z).epsilon(1e-14));
  CHECK(bath.weights[0] ==
        doctest::Approx(std::exp(-p.beta * p.omega / 2.0) / z).epsilon(1e-14));
  CHECK(bath.weights.sum() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("ground-state concentration at low temperature") {
  ModelParams p{2.5, 2.0, 1.0, 6, 500.0};
  const BathThermalState bath = bath_thermal_state(p);
  CHECK(bath.weights[p.n_spins] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(bath.weights.minCoeff() >= 0.0);
}

TEST_CASE("overflow guard: beta far beyond 700/omega still normalizes") {
  ModelParams p{2.5, 2.0, 1.0, 5, 1e5};
  const BathThermalState bath = bath_thermal_state(p);
  CHECK(std::isfinite(bath.log_partition));
  CHECK(bath.weights.sum() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::isfinite(bath.log_weights.minCoeff()));
}

TEST_CASE("partition equals the xi closed form") {
  SUBCASE("fig3 parameters") {
    ModelParams p{2.5, 2.0, 1.0, 10, 1.0};
    const BathThermalState bath = bath_thermal_state(p);
    CHECK(bath.partition ==
          doctest::Approx(std::exp(log_xi(p))).epsilon(1e-12));
  }
  SUBCASE("N and beta sweep") {
    for (int n = 1; n <= 20; ++n) {
      for (double beta : {0.01, 0.1, 1.0, 10.0}) {
        ModelParams p{2.5, 2.0, 1.0, n, beta};
        const BathThermalState bath = bath_thermal_state(p);
        CHECK(bath.log_partition == doctest::Approx(log_xi(p)).epsilon(1e-10));
      }
    }
  }
}
