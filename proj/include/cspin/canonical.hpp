#pragma once

#include <array>
#include <vector>

#include "cspin/dynamics.hpp"

namespace cspin {

/// Generator rates and the canonical-Hamiltonian closed form at one instant.
struct CanonicalRates {
  double t = 0.0;
  double zeta = 0.0;       ///< population gain rate
  double gamma_cap = 0.0;  ///< Gamma(t)
  Complex theta{0.0, 0.0}; ///< delta_dot/delta
  double zeta_dot = 0.0;
  double gamma_cap_dot = 0.0;
  Complex theta_dot{0.0, 0.0};
  double lambda3 = 0.0;  ///< Lambda_3 <= Lambda_4
  double lambda4 = 0.0;
  Complex y3{0.0, 0.0};
  Complex y4{0.0, 0.0};
  double omega_t = 0.0;    ///< Omega(t), H_can = Omega sigma_z
  double omega_dot = 0.0;  ///< analytic d Omega/dt
};

/// Rates from the triplet, including time derivatives (needs the triplet's
/// second derivatives).  Throws MapSingular when alpha = eta or delta = 0,
/// ThetaSingular when |theta| < theta_tol (closed form loses its y's).
CanonicalRates canonical_rates(const PropagatorTriplet& triplet,
                               double singular_tol = 1e-12,
                               double theta_tol = 1e-12);

/// Omega(t) from the Lambda/y closed form.
double canonical_hamiltonian_closed(const CanonicalRates& rates);

/// Pseudo-Kraus decomposition L(rho) = sum_j gamma_j E_j rho E_j^dag of an
/// HPTA superoperator, from the Hermitian eigensystem of its Choi-type
/// matrix.  gamma_j may be negative.
struct PseudoKraus {
  Eigen::Vector4d gammas;
  std::array<Matrix2c, 4> ops;
};

/// Throws NotHPTA when the input fails Hermiticity preservation or trace
/// annihilation beyond 1e-8.
PseudoKraus pseudo_kraus(const Matrix4c& lindblad);

/// H_can = (1/2id) sum_j gamma_j [Tr(E_j) E_j^dag - Tr(E_j^dag) E_j];
/// traceless and Hermitian by construction.
Matrix2c canonical_hamiltonian_general(const PseudoKraus& pk);

/// Reconstructs the superoperator matrix from a pseudo-Kraus set.
Matrix4c superop_from_pseudo_kraus(const PseudoKraus& pk);

/// Minimal dissipator: jump operators L_j = E_j - Tr(E_j)/d, traceless.
struct MinimalDissipator {
  Eigen::Vector4d gammas;
  std::array<Matrix2c, 4> jump_ops;
};
MinimalDissipator minimal_dissipator(const PseudoKraus& pk);

/// GKSL evaluation sum_j gamma_j (L rho L^dag - {L^dag L, rho}/2).
Matrix2c apply_dissipator_gksl(const MinimalDissipator& d, const Matrix2c& rho);

/// Direct evaluation D(rho) = L(rho) + i[H_can, rho].
Matrix2c apply_dissipator_direct(const Matrix4c& lindblad,
                                 const Matrix2c& h_can, const Matrix2c& rho);

/// Heisenberg-picture system Hamiltonian
/// Tr_B[rho_B(0) e^{iHt} (H_S x I) e^{-iHt}] on the joint space.
Matrix2c heisenberg_system_hamiltonian(const ModelParams& params, double t);

/// Canonical-Hamiltonian thermodynamic bookkeeping at one output node.
struct TildeRecord {
  double t = 0.0;
  double du_system = 0.0;   ///< dU~_S = dW~_S + dQ~_S (quadrature)
  double dw_system = 0.0;   ///< int Tr[Hcan_dot rho_S]
  double dq_system = 0.0;   ///< int Tr[Hcan rho_S_dot]
  double du_direct = 0.0;   ///< Tr[Hcan(t) rho_S(t)] - Tr[Hcan(0) rho_S(0)]
  double sigma_tilde = 0.0; ///< dS_S - beta dQ~_S
  double du_bath = 0.0;     ///< Tr[V(rho0 - rho_t)] - dU~_S
  double sigma_prime = 0.0; ///< dS_S + beta dU~_B
  double omega_t = 0.0;
  int flagged_nodes = 0;    ///< singular fine nodes skipped so far
};

struct TildeOptions {
  /// fine-grid density: nodes per unit of omega0 * t
  double nodes_per_phase = 2000.0;
  /// Richardson (half-grid) quadrature error budget at the final time
  double quad_tol = 1e-6;
  double singular_tol = 1e-12;
  double theta_tol = 1e-12;
};

/// Integrates the canonical work/heat splits over a uniform output grid and
/// attaches the bath-side quantities at the output nodes.  Throws
/// GridTooCoarse when the half-grid estimate exceeds quad_tol.
std::vector<TildeRecord> tilde_quantities(const ModelParams& params,
                                          const QubitState& rho0,
                                          const std::vector<double>& times,
                                          const TildeOptions& options = {});

}  // namespace cspin
