#pragma once

#include <vector>

#include "cspin/dynamics.hpp"

namespace cspin {

/// -Tr[rho ln rho] over the eigenvalues, with 0 ln 0 := 0.
double von_neumann_entropy(const MatrixXc& rho);
double von_neumann_entropy_qubit(const QubitState& state);

/// (omega0/2) [z(t) - z(0)].
double delta_u_system(double z_t, double z_0, double omega0);

/// Tr{H_B [rho_B(t) - rho_B(0)]} from the reduced bath populations.
double q_bath(const ArrayXd& bath_diag_t, const BathThermalState& bath0);
double q_bath(const MatrixXc& bath_t, const BathThermalState& bath0);

/// Tr[V (rho_SB(0) - rho_SB(t))]; equals dU_S + Q_B (first law).
double work_interaction(const JointState& joint0, const JointState& joint_t,
                        const MatrixXc& coupling);

struct EntropyProduction {
  double sigma = 0.0;                 ///< S[rho_SB(t) || rho_S(t) x rho_B(0)]
  double mutual_information = 0.0;    ///< I(S:B) in rho_SB(t)
  double bath_relative_entropy = 0.0; ///< S[rho_B(t) || rho_B(0)]
};

/// Relative-entropy form of the entropy production.  ln rho_SB(t) is
/// carried by the unitary invariance of the t = 0 product spectrum.
/// Throws EigenvalueUnderflow when a required log argument is < 1e-300.
EntropyProduction entropy_production_relative(const JointState& joint_t,
                                              const Matrix2c& rho_s_t,
                                              const Matrix2c& rho_s_0,
                                              const BathThermalState& bath0);

struct FittedTemperature {
  double u = 0.0;  ///< fitted inverse temperature 1/T, continuous through 0
  bool at_infinity = false;  ///< bath energy hit the equal-population point

  double temperature() const {
    return at_infinity ? std::numeric_limits<double>::infinity() : 1.0 / u;
  }
};

/// Finds T with Tr[H_B zeta_B(T)] equal to the given bath energy, by
/// bisection in u = 1/T on the strictly monotone energy curve.  Negative
/// temperatures arise for inverted populations.  Throws EnergyOutOfRange
/// at or beyond the extremal level energies.
FittedTemperature fit_bath_temperature(double bath_energy,
                                       const ArrayXd& energies,
                                       double energy_tol = 1e-12);
FittedTemperature fit_bath_temperature(const MatrixXc& bath_t,
                                       const ArrayXd& energies,
                                       double energy_tol = 1e-12);

/// Sigma - S(zeta_B[T(t)] || zeta_B[T(0)]) with both Gibbs states diagonal.
double entropy_production_finite(double sigma, const FittedTemperature& fit_t,
                                 double beta0, const ArrayXd& energies);

/// One sampled instant of the heat/work/entropy bookkeeping.
struct ThermoRecord {
  double t = 0.0;
  double du_system = 0.0;        ///< dU_S
  double q_bath = 0.0;           ///< Q_B
  double work = 0.0;             ///< W = dU_S + Q_B
  double work_interaction = 0.0; ///< Tr[V (rho_SB(0) - rho_SB(t))]
  double sigma = 0.0;            ///< relative-entropy form
  double sigma_clausius = 0.0;   ///< dS_S + beta Q_B
  double sigma_finite = 0.0;
  double sigma_finite_integral = 0.0;  ///< dS_S + int dQ_B/T, cross-check only
  double t_fit = 0.0;            ///< signed, +-inf at the equal-population point
  double beta_fit = 0.0;         ///< u = 1/T, always finite
  double ds_system = 0.0;
  double mutual_information = 0.0;
  double bath_relative_entropy = 0.0;
};

/// Full joint-state bookkeeping along a time grid (O(N^2) per sample).
std::vector<ThermoRecord> thermo_trajectory(const ModelParams& params,
                                            const QubitState& rho0,
                                            const std::vector<double>& times);

}  // namespace cspin
