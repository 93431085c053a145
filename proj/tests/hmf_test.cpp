#include <doctest.h>

#include <cmath>

#include "cspin/hmf.hpp"
#include "cspin/model.hpp"

using namespace cspin;

namespace {

// dense route: Tr_B[exp(-beta H)] with a spectral shift, plus Z_B
struct DenseGibbs {
  Matrix2c tr_b;   // un-normalized, times e^{beta*shift}
  double shift;
  double z_sb;     // times e^{beta*shift}
};

DenseGibbs dense_gibbs(const ModelParams& p, double beta) {
  const DenseOperators ops = build_dense_hamiltonians(p);
  Eigen::SelfAdjointEigenSolver<MatrixXc> solver(ops.total);
  DenseGibbs out;
  out.shift = solver.eigenvalues().minCoeff();
  VectorXc boltz(p.joint_dim());
  for (int k = 0; k < p.joint_dim(); ++k)
    boltz[k] = std::exp(-beta * (solver.eigenvalues()[k] - out.shift));
  const MatrixXc expm = solver.eigenvectors() * boltz.asDiagonal() *
                        solver.eigenvectors().adjoint();
  const int db = p.bath_dim();
  out.tr_b = Matrix2c::Zero();
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      out.tr_b(a, b) = expm.block(a * db, b * db, db, db).trace();
  out.z_sb = out.tr_b.trace().real();
  return out;
}

}  // namespace

TEST_CASE("pi normalization identity against the dense trace") {
  for (int n : {2, 5, 10}) {
    for (double beta : {0.3, 2.0}) {
      ModelParams p{2.5, 2.0, 0.7, n, 1.0};
      const Spectrum sp = build_spectrum(p);
      const auto [pi00, pi11] = pi_elements(sp, p, beta);
      const DenseGibbs dense = dense_gibbs(p, beta);
      ModelParams pb = p;
      pb.beta = beta;
      const double log_zb = bath_thermal_state(pb).log_partition;
      const double ratio =
          std::exp(std::log(dense.z_sb) - beta * dense.shift - log_zb);
      CHECK(pi00 + pi11 == doctest::Approx(ratio).epsilon(1e-12));
      CHECK(std::abs(dense.tr_b(0, 1)) < 1e-12);  // Tr_B e^{-bH} is diagonal
    }
  }
}

TEST_CASE("infinite-temperature limit: equal pi, maximally mixed state") {
  ModelParams p{2.5, 2.0, 1.0, 6, 1.0};
  const MeanForceResult mf = mean_force(p, 1e-9);
  CHECK(mf.pi00 == doctest::Approx(mf.pi11).epsilon(1e-6));
  CHECK(mf.gibbs_state(0, 0).real() == doctest::Approx(0.5).epsilon(1e-8));
}

TEST_CASE("mean-force Gibbs state equals the reduced global Gibbs state") {
  for (int n : {1, 4, 10}) {
    for (double beta : {0.01, 0.1, 1.0, 10.0}) {
      ModelParams p{2.5, 2.0, 1.0, n, 1.0};
      const MeanForceResult mf = mean_force(p, beta);
      const DenseGibbs dense = dense_gibbs(p, beta);
      const Matrix2c zeta = dense.tr_b / dense.z_sb;
      CHECK((zeta - mf.gibbs_state).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
}

TEST_CASE("H* gauge: the induced Gibbs state matches the dense matrix log") {
  ModelParams p{2.5, 2.0, 0.9, 6, 1.0};
  const double beta = 1.7;
  const MeanForceResult mf = mean_force(p, beta);
  const DenseGibbs dense = dense_gibbs(p, beta);
  // -(1/beta) log of the (diagonal) reduced Boltzmann operator, then the
  // Gibbs state it induces; agrees with H* up to an identity shift
  const double h00 =
      -(std::log(dense.tr_b(0, 0).real()) + beta * dense.shift) / beta;
  const double h11 =
      -(std::log(dense.tr_b(1, 1).real()) + beta * dense.shift) / beta;
  const double z = std::exp(-beta * h00) + std::exp(-beta * h11);
  CHECK(std::exp(-beta * h00) / z ==
        doctest::Approx(mf.gibbs_state(0, 0).real()).epsilon(1e-10));
  CHECK(std::exp(-beta * h11) / z ==
        doctest::Approx(mf.gibbs_state(1, 1).real()).epsilon(1e-10));
  // the log-pi gauge differs from the dense log by Z_B-dependent shifts only
  const double gauge0 = mf.h_star(0, 0).real() - h00;
  const double gauge1 = mf.h_star(1, 1).real() - h11;
  CHECK(gauge0 == doctest::Approx(gauge1).epsilon(1e-9));
}

TEST_CASE("hamiltonian_mean_force: logs, induced Gibbs state, guards") {
  const double beta = 1.3, pi00 = 0.4, pi11 = 1.7;
  const Matrix2c h = hamiltonian_mean_force(pi00, pi11, beta);
  CHECK(h(0, 0).real() == doctest::Approx(-std::log(pi00) / beta));
  CHECK(h(1, 1).real() == doctest::Approx(-std::log(pi11) / beta));
  const double z = std::exp(-beta * h(0, 0).real()) +
                   std::exp(-beta * h(1, 1).real());
  CHECK(std::exp(-beta * h(0, 0).real()) / z ==
        doctest::Approx(pi00 / (pi00 + pi11)).epsilon(1e-14));
  CHECK_THROWS_AS(hamiltonian_mean_force(-0.1, 1.0, beta), NumericalGuard);
}

TEST_CASE("decoupled path returns the bare Hamiltonian exactly") {
  ModelParams p{2.5, 2.0, 0.0, 6, 1.0};
  const MeanForceResult mf = mean_force(p, 2.0);
  CHECK(mf.h_star(0, 0).real() == doctest::Approx(p.omega0 / 2.0).epsilon(1e-14));
  CHECK(mf.h_star(1, 1).real() ==
        doctest::Approx(-p.omega0 / 2.0).epsilon(1e-14));
  CHECK(mf.hs_norm_diff == doctest::Approx(0.0));
}

TEST_CASE("analytic beta-derivative of pi matches finite differences") {
  ModelParams p{5.0, 5.0, 0.5, 20, 1.0};
  const Spectrum sp = build_spectrum(p);
  for (double beta : {0.2, 1.0, 5.0}) {
    const double h = 1e-6 * beta;
    const PiLogElements mid = pi_log_elements(sp, p, beta);
    const PiLogElements up = pi_log_elements(sp, p, beta + h);
    const PiLogElements dn = pi_log_elements(sp, p, beta - h);
    CHECK(mid.dlog_pi00 ==
          doctest::Approx((up.log_pi00 - dn.log_pi00) / (2 * h)).epsilon(1e-6));
    CHECK(mid.dlog_pi11 ==
          doctest::Approx((up.log_pi11 - dn.log_pi11) / (2 * h)).epsilon(1e-6));
  }
}

TEST_CASE("fig4 regime: norm grows with coupling, saturates at low T") {
  ModelParams p{5.0, 5.0, 0.1, 80, 1.0};
  auto norm_at = [&](double eps, double beta) {
    ModelParams q = p;
    q.epsilon = eps;
    return mean_force(q, beta).hs_norm_diff;
  };
  CHECK(norm_at(0.5, 2.0) > norm_at(0.1, 2.0));
  // high temperature: H* collapses onto H_S
  CHECK(norm_at(0.1, 0.01) <= 0.1 * norm_at(0.1, 2.0));
  // saturation between beta = 20 and beta = 50
  const double n20 = norm_at(0.1, 20.0), n50 = norm_at(0.1, 50.0);
  CHECK(std::abs(n50 - n20) <= 0.05 * n20);
}

TEST_CASE("thermodynamic entropy limits") {
  ModelParams p{5.0, 5.0, 0.1, 80, 1.0};
  const Spectrum sp = build_spectrum(p);
  CHECK(thermodynamic_entropy(sp, p, 1e-4) ==
        doctest::Approx(std::log(2.0)).epsilon(2e-4));
  CHECK(thermodynamic_entropy(sp, p, 50.0) <= 0.05);  // third law
  // non-negative on the sampled fig4 grid
  for (double eps : {0.1, 0.5, 1.0}) {
    ModelParams q = p;
    q.epsilon = eps;
    const Spectrum sq = build_spectrum(q);
    for (double beta = 0.01; beta <= 50.0; beta *= 1.8)
      CHECK(thermodynamic_entropy(sq, q, beta) >= -1e-9);
  }
}
