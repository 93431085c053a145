#include <doctest.h>

#include <cmath>

#include "cspin/thermo.hpp"

using namespace cspin;

namespace {

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> out(n);
  for (int k = 0; k < n; ++k) out[k] = a + (b - a) * k / (n - 1);
  return out;
}

}  // namespace

TEST_CASE("von Neumann entropy: pure, maximally mixed, Gibbs identity") {
  Matrix2c pure = Matrix2c::Zero();
  pure(0, 0) = 1.0;
  CHECK(von_neumann_entropy(MatrixXc(pure)) == doctest::Approx(0.0));
  CHECK(von_neumann_entropy(MatrixXc(0.5 * Matrix2c::Identity())) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-14));

  ModelParams p{2.5, 2.0, 1.0, 10, 1.0};
  const BathThermalState bath = bath_thermal_state(p);
  MatrixXc rho_b = bath.weights.matrix().cast<Complex>().asDiagonal();
  const double gibbs = p.beta * bath.mean_energy() + bath.log_partition;
  CHECK(von_neumann_entropy(rho_b) == doctest::Approx(gibbs).epsilon(1e-12));
}

TEST_CASE("delta_u_system basics") {
  CHECK(delta_u_system(0.3, 0.3, 2.5) == 0.0);
  CHECK(delta_u_system(-0.2, 1.0, 2.5) == doctest::Approx(-1.5));
}

TEST_CASE("excited start: dU_S = omega0 (rho00 - 1), against the oracle") {
  ModelParams p{2.5, 2.0, 1.0, 5, 1.0};
  const TripletEvaluator eval(p);
  const OraclePropagator oracle(p);
  const Matrix2c h_s = system_hamiltonian(p.omega0);
  Matrix2c excited = Matrix2c::Zero();
  excited(0, 0) = 1.0;
  for (double t : {0.8, 2.9}) {
    const PropagatorTriplet tr = eval(t);
    const double du = delta_u_system(2.0 * tr.alpha - 1.0, 1.0, p.omega0);
    CHECK(du == doctest::Approx(p.omega0 * (tr.alpha - 1.0)).epsilon(1e-12));
    const Matrix2c rs = oracle.reduced_system(excited, t);
    const double du_oracle = ((rs - excited) * h_s).trace().real();
    CHECK(du == doctest::Approx(du_oracle).epsilon(1e-10));
  }
}

TEST_CASE("first law holds sample by sample") {
  ModelParams p{3.25, 3.0, 0.5, 12, 4.0};
  const QubitState rho0 = QubitState::from_amplitudes(0.5, std::sqrt(3.0) / 2.0);
  const auto records = thermo_trajectory(p, rho0, linspace(0.0, 15.0, 61));
  CHECK(records.front().q_bath == doctest::Approx(0.0));
  CHECK(records.front().work_interaction == doctest::Approx(0.0));
  for (const auto& rec : records) {
    CHECK(std::abs(rec.du_system + rec.q_bath - rec.work_interaction) < 1e-9);
    // integrated bath-heat-current route
    CHECK(std::abs(rec.q_bath - (rec.work_interaction - rec.du_system)) < 1e-9);
  }
}

TEST_CASE("weak coupling moves far less bath energy than strong") {
  const std::vector<double> times = linspace(0.0, 20.0, 81);
  auto max_abs_q = [&](double eps) {
    ModelParams p{3.25, 3.0, eps, 20, 4.0};
    const QubitState rho0 =
        QubitState::from_amplitudes(0.5, std::sqrt(3.0) / 2.0);
    double worst = 0.0;
    for (const auto& rec : thermo_trajectory(p, rho0, times))
      worst = std::max(worst, std::abs(rec.q_bath));
    return worst;
  };
  const double weak = max_abs_q(0.03 * 3.25);
  const double strong = max_abs_q(0.5);
  CHECK(weak * 5.0 < strong);
}

TEST_CASE("entropy production: zero at start, two routes agree, decomposition") {
  ModelParams p{2.5, 2.0, 1.0, 10, 1.0};
  const QubitState rho0 = QubitState::from_amplitudes(0.5, std::sqrt(3.0) / 2.0);
  const auto records = thermo_trajectory(p, rho0, linspace(0.0, 20.0, 81));
  CHECK(std::abs(records.front().sigma) < 1e-10);
  bool rate_negative_somewhere = false;
  for (size_t k = 0; k < records.size(); ++k) {
    const auto& rec = records[k];
    CHECK(rec.sigma >= -1e-9);
    CHECK(std::abs(rec.sigma - rec.sigma_clausius) < 1e-8);
    CHECK(std::abs(rec.sigma - rec.mutual_information -
                   rec.bath_relative_entropy) < 1e-8);
    CHECK(rec.sigma_finite <= rec.sigma + 1e-8);
    if (k > 0 && rec.sigma < records[k - 1].sigma - 1e-10)
      rate_negative_somewhere = true;
  }
  // non-Markovian signature: Sigma dips even though it stays non-negative
  CHECK(rate_negative_somewhere);
}

TEST_CASE("temperature fit: exact at t = 0, round trip, guard rails") {
  ModelParams p{2.5, 2.0, 1.0, 10, 1.0};
  const BathThermalState bath = bath_thermal_state(p);
  const FittedTemperature at0 =
      fit_bath_temperature(bath.mean_energy(), bath.energies);
  CHECK(at0.u == doctest::Approx(p.beta).epsilon(1e-10));

  const auto records = thermo_trajectory(
      p, QubitState::from_amplitudes(0.5, std::sqrt(3.0) / 2.0),
      linspace(0.0, 12.0, 25));
  for (const auto& rec : records) {
    ArrayXd x = -rec.beta_fit * bath.energies;
    x -= x.maxCoeff();
    const ArrayXd w = x.exp() / x.exp().sum();
    const double refit = (w * bath.energies).sum();
    const double direct = bath.mean_energy() + rec.q_bath;
    CHECK(refit == doctest::Approx(direct).epsilon(1e-10));
  }

  SUBCASE("equal-population point flags infinite temperature") {
    const FittedTemperature mid = fit_bath_temperature(0.0, bath.energies);
    CHECK(mid.at_infinity);
    CHECK(std::isinf(mid.temperature()));
  }
  SUBCASE("extremal energies are rejected") {
    CHECK_THROWS_AS(fit_bath_temperature(p.omega / 2.0, bath.energies),
                    EnergyOutOfRange);
    CHECK_THROWS_AS(fit_bath_temperature(-p.omega / 2.0, bath.energies),
                    EnergyOutOfRange);
  }
  SUBCASE("inverted populations give a negative temperature") {
    const FittedTemperature hot = fit_bath_temperature(0.3, bath.energies);
    CHECK(hot.u < 0.0);
    CHECK(hot.temperature() < 0.0);
  }
}

TEST_CASE("finite-bath entropy production") {
  ModelParams p{2.5, 2.0, 1.0, 10, 1.0};
  const BathThermalState bath = bath_thermal_state(p);
  FittedTemperature same;
  same.u = p.beta;
  CHECK(entropy_production_finite(0.7, same, p.beta, bath.energies) ==
        doctest::Approx(0.7).epsilon(1e-12));
  // the subtracted relative entropy is non-negative (Klein inequality)
  for (double u : {0.2, 2.0, -0.5}) {
    FittedTemperature fit;
    fit.u = u;
    CHECK(entropy_production_finite(0.0, fit, p.beta, bath.energies) <= 1e-12);
  }
}

TEST_CASE("underflow guard trips at absurd beta") {
  ModelParams p{2.5, 2.0, 1.0, 6, 900.0};  // beta*omega = 1800
  const JointPropagator prop(p);
  const QubitState rho0 = QubitState::excited();
  const JointState joint = prop.at(rho0, 1.0);
  CHECK_THROWS_AS(entropy_production_relative(joint, reduce_system(joint),
                                              rho0.matrix(), prop.bath()),
                  EigenvalueUnderflow);
}
