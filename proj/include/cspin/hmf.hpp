#pragma once

#include <utility>

#include "cspin/model.hpp"

namespace cspin {

/// Mean-force quantities at one inverse temperature.
struct MeanForceResult {
  double beta = 0.0;
  double pi00 = 0.0;
  double pi11 = 0.0;
  double log_pi00 = 0.0;  ///< finite at any beta (computed in log space)
  double log_pi11 = 0.0;
  Matrix2c h_star;        ///< Hamiltonian of mean force, diagonal
  Matrix2c gibbs_state;   ///< zeta*_S = diag(pi00, pi11)/(pi00+pi11)
  double s_thermo = 0.0;  ///< strong-coupling thermodynamic entropy
  double hs_norm_diff = 0.0;  ///< || H*_S - H_S ||_HS
};

/// pi_00 and pi_11: bath-traced Boltzmann weights of the two system levels,
/// normalized by xi(beta) = Z_B.  The +- in the closed form sums over BOTH
/// eigenbranches.  Exponents are max-shifted, so any beta is safe.
std::pair<double, double> pi_elements(const Spectrum& spectrum,
                                      const ModelParams& params, double beta);

/// log(pi00), log(pi11) plus their analytic beta-derivatives
/// d log(pi_xx)/d beta (always finite; preferred at extreme beta).
struct PiLogElements {
  double log_pi00, log_pi11;
  double dlog_pi00, dlog_pi11;
};
PiLogElements pi_log_elements(const Spectrum& spectrum,
                              const ModelParams& params, double beta);

/// H*_S = -(1/beta) diag(ln pi00, ln pi11).
Matrix2c hamiltonian_mean_force(double pi00, double pi11, double beta);

/// Shannon term of the mean-force Gibbs state plus the beta^2 <d_beta H*>
/// correction, via the analytic mu_00/mu_11 coefficients.
double thermodynamic_entropy(const Spectrum& spectrum,
                             const ModelParams& params, double beta);

/// Full bundle; epsilon = 0 short-circuits to the exact decoupled result
/// H* = H_S.
MeanForceResult mean_force(const ModelParams& params, double beta);

}  // namespace cspin
