#pragma once

#include "cspin/types.hpp"

namespace cspin {

/// The five physical knobs of one experiment (hbar = k_B = 1).
struct ModelParams {
  double omega0 = 1.0;   ///< transition frequency of the central spin
  double omega = 1.0;    ///< bath frequency before the 1/N scaling
  double epsilon = 0.1;  ///< system-bath coupling strength
  int n_spins = 1;       ///< number of bath spins N
  double beta = 1.0;     ///< inverse bath temperature

  int bath_dim() const { return n_spins + 1; }
  int joint_dim() const { return 2 * (n_spins + 1); }
  double temperature() const { return 1.0 / beta; }

  /// Throws ConfigError unless n_spins >= 1, beta > 0, epsilon >= 0 and all
  /// frequencies are finite.
  void validate() const;
};

// Basis conventions, fixed throughout the library because partial traces
// depend on them:
//   - system index s: 0 = excited |0>, 1 = ground |1>  (sigma_z|0> = +|0>)
//   - bath index n = 0..N labels the J_z ladder, J_z|n> = (N/2 - n)|n>,
//     so H_B|n> = (omega/2)(1 - 2n/N)|n>
//   - joint index(s, n) = s*(N+1) + n  (system-major, column-major storage)

/// Analytic eigensystem of the total Hamiltonian (Appendix-A closed forms).
/// Arrays are indexed by n-1 for the interacting doublets n = 1..N; each
/// doublet spans {|0,n>, |1,n-1>}.  The two uncoupled corner states |0,0>
/// and |1,N> carry the edge energies +-(omega+omega0)/2.
struct Spectrum {
  double b = 0.0;  ///< omega - N*omega0
  ArrayXd a;       ///< a_n, coupling matrix elements (all > 0 for epsilon > 0)
  ArrayXd chi_plus;
  ArrayXd chi_minus;
  ArrayXd lambda_plus;
  ArrayXd lambda_minus;
  double edge_plus = 0.0;   ///< energy of |0,0>
  double edge_minus = 0.0;  ///< energy of |1,N>
  int n_spins = 0;

  // derived quantities used by the propagator closed forms
  ArrayXd gap;   ///< lambda_plus - lambda_minus = sqrt(b^2+4a_n^2)/N
  ArrayXd asym;  ///< u_n = b / sqrt(b^2 + 4 a_n^2), in (-1, 1)

  // eigenvector weights: |<0,n|psi_pm>|^2, |<1,n-1|psi_pm>|^2 and the
  // cross term <0,n|psi_pm><psi_pm|1,n-1> = +-a_n/s_n
  ArrayXd up_plus() const { return (1.0 - asym) / 2.0; }
  ArrayXd up_minus() const { return (1.0 + asym) / 2.0; }
  ArrayXd down_plus() const { return (1.0 + asym) / 2.0; }
  ArrayXd down_minus() const { return (1.0 - asym) / 2.0; }
  ArrayXd cross() const { return a / (gap * static_cast<double>(n_spins)); }

  /// Reconstructs |psi_pm(n)> (branch +1/-1) in the joint basis.
  Eigen::VectorXd eigenvector(int n, int branch) const;
};

/// Thermal Gibbs state of the bare bath, diagonal in |n>.
struct BathThermalState {
  ArrayXd weights;      ///< p_n, sum to 1
  ArrayXd log_weights;  ///< ln p_n, finite for beta*omega within double range
  ArrayXd energies;     ///< (omega/2)(1 - 2n/N)
  double partition = 0.0;      ///< Z (overflows to inf only beyond beta ~ 1400/omega)
  double log_partition = 0.0;  ///< ln Z, always finite
  double beta = 0.0;

  double mean_energy() const { return (weights * energies).sum(); }
};

/// Appendix-A spectral decomposition.  Requires epsilon > 0; throws
/// DecoupledModel at epsilon = 0 where chi_pm degenerates.
Spectrum build_spectrum(const ModelParams& params);

/// Thermal bath state with max-exponent shifting (third-law scans reach
/// very low temperature).
BathThermalState bath_thermal_state(const ModelParams& params);

/// ln Z_B from the closed form sinh[beta*omega*(N+1)/2N]/sinh[beta*omega/2N].
double log_xi(const ModelParams& params);

/// Energies (omega/2)(1 - 2n/N) of the bare bath levels, n = 0..N.
ArrayXd bath_energies(const ModelParams& params);

/// Collective angular-momentum operators in the (N+1)-dim symmetric sector,
/// from the standard ladder matrix elements for j = N/2.
Eigen::MatrixXd collective_jz(int n_spins);
Eigen::MatrixXd collective_jx(int n_spins);
MatrixXc collective_jy(int n_spins);

/// (omega0/2) sigma_z.
Matrix2c system_hamiltonian(double omega0);

/// Dense Hermitian representations on the joint space: total = system +
/// bath + coupling exactly.  epsilon = 0 is allowed here.
struct DenseOperators {
  MatrixXc total;
  MatrixXc system;    ///< H_S (x) I
  MatrixXc bath;      ///< I (x) H_B
  MatrixXc coupling;  ///< V = (epsilon/sqrt(N)) (sx Jx + sy Jy)
};
DenseOperators build_dense_hamiltonians(const ModelParams& params);

}  // namespace cspin
