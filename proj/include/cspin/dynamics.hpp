#pragma once

#include <optional>

#include "cspin/model.hpp"

namespace cspin {

/// Bloch-vector view of the central-spin state,
/// rho = (1/2)[I + x sx + y sy + z sz].
struct QubitState {
  double x = 0.0, y = 0.0, z = 0.0;

  static QubitState excited() { return {0.0, 0.0, 1.0}; }
  static QubitState ground() { return {0.0, 0.0, -1.0}; }
  /// Pure state c0|0> + c1|1>.
  static QubitState from_amplitudes(Complex c0, Complex c1);
  /// System Gibbs state exp(-beta H_S)/Z.
  static QubitState thermal(double omega0, double beta);
  static QubitState from_matrix(const Matrix2c& rho);

  Matrix2c matrix() const;
  double radius() const { return std::sqrt(x * x + y * y + z * z); }
  double rho00() const { return (1.0 + z) / 2.0; }
  double rho11() const { return (1.0 - z) / 2.0; }
  Complex rho01() const { return Complex(x, -y) / 2.0; }
  bool valid(double tol = 1e-12) const { return radius() <= 1.0 + tol; }
};

/// Map coefficients alpha, eta, delta with analytic time derivatives
/// (term-wise differentiation of the closed-form sums; second derivatives
/// feed the canonical-Hamiltonian study).
struct PropagatorTriplet {
  double t = 0.0;
  double alpha = 1.0;
  double eta = 0.0;
  Complex delta{1.0, 0.0};
  double alpha_dot = 0.0;
  double eta_dot = 0.0;
  Complex delta_dot{0.0, 0.0};
  double alpha_ddot = 0.0;
  double eta_ddot = 0.0;
  Complex delta_ddot{0.0, 0.0};
};

/// Evaluates the closed-form reduced dynamics in O(N) per time sample.
/// Handles epsilon = 0 by the exact decoupled evolution (alpha = 1, eta = 0,
/// delta = exp(-i omega0 t)).  Pure and safe to share across threads.
class TripletEvaluator {
 public:
  explicit TripletEvaluator(const ModelParams& params);

  PropagatorTriplet operator()(double t) const;

  /// alpha(t) alone (excited-start population), cheapest possible path for
  /// large-N sweeps.
  double population_alpha(double t) const;
  /// eta(t) alone (ground-start excited population).
  double population_eta(double t) const;

  bool decoupled() const { return decoupled_; }
  const ModelParams& params() const { return params_; }
  const BathThermalState& bath() const { return bath_; }
  /// Only valid for epsilon > 0.
  const Spectrum& spectrum() const { return *spectrum_; }

 private:
  ModelParams params_;
  BathThermalState bath_;
  std::optional<Spectrum> spectrum_;
  bool decoupled_ = false;
  double edge_ = 0.0;  // (omega + omega0)/2

  // per-doublet caches, index n-1 for n = 1..N
  ArrayXd lam_p_, lam_m_, gap_;
  ArrayXd walpha_;  // p_n     * 2 a_n^2 / s_n^2
  ArrayXd weta_;    // p_{n-1} * 2 a_n^2 / s_n^2
  ArrayXd up_p_, up_m_, dn_p_, dn_m_;  // eigenvector weights
};

/// Spec-shaped free function; requires the epsilon > 0 spectral path.
PropagatorTriplet propagator_triplet(const Spectrum& spectrum,
                                     const BathThermalState& bath, double t);

/// z = 2[alpha rho00(0) + eta rho11(0)] - 1, x + iy from delta rho01(0).
QubitState propagate_system(const QubitState& rho0,
                            const PropagatorTriplet& triplet);

/// Analytic d/dt of the Bloch vector at the triplet's instant.
QubitState bloch_velocity(const QubitState& rho0,
                          const PropagatorTriplet& triplet);

// Superoperators act on vec(rho) = (rho00, rho01, rho10, rho11).
Vector4c vectorize(const Matrix2c& rho);
Matrix2c unvectorize(const Vector4c& v);

struct DynamicalMap {
  Matrix4c phi;
  double t = 0.0;
};

/// The 4x4 map matrix; trace preservation is exact by construction.
DynamicalMap dynamical_map(const PropagatorTriplet& triplet);

/// Time-local generator L = Phi_dot Phi^{-1}.  Throws MapSingular when
/// |alpha - eta| or |delta| falls below tol (isolated non-invertible points).
Matrix4c lindbladian(const PropagatorTriplet& triplet, double tol = 1e-12);

/// Choi-type reshuffle C[(i,k),(j,l)] = S[(i,j),(k,l)] of a qubit
/// superoperator; Hermitian iff S preserves Hermiticity.
Matrix4c choi_matrix(const Matrix4c& superop);

/// Applies a superoperator matrix to a density matrix.
Matrix2c apply_superop(const Matrix4c& superop, const Matrix2c& rho);

/// Dense joint system-bath state at one instant.
struct JointState {
  MatrixXc matrix;
  double t = 0.0;
  int n_spins = 0;

  double trace_error() const { return std::abs(matrix.trace() - Complex(1, 0)); }
  double hermiticity_error() const {
    return (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
  }
};

/// Exact joint propagation through the analytic eigenpairs: O(N) setup,
/// O(N^2) per sample.  Guarded by max_n_spins (default 4096).
class JointPropagator {
 public:
  explicit JointPropagator(const ModelParams& params, int max_n_spins = 4096);

  JointState initial(const QubitState& rho0) const;
  JointState at(const QubitState& rho0, double t) const;
  /// The joint unitary e^{-iHt} assembled from phases on the analytic
  /// eigenvectors (block-sparse fill).
  MatrixXc unitary(double t) const;

  const ModelParams& params() const { return params_; }
  const BathThermalState& bath() const { return bath_; }

 private:
  ModelParams params_;
  BathThermalState bath_;
  std::optional<Spectrum> spectrum_;
  bool decoupled_ = false;
};

JointState propagate_joint(const QubitState& rho0, const ModelParams& params,
                           const Spectrum& spectrum,
                           const BathThermalState& bath, double t);

Matrix2c reduce_system(const JointState& joint);
MatrixXc reduce_bath(const JointState& joint);
/// Diagonal of the reduced bath state only (O(N), enough for energies).
ArrayXd reduce_bath_diagonal(const JointState& joint);

/// Brute-force propagator through numerical Hermitian diagonalization of the
/// dense total Hamiltonian; shares no code with the analytic spectrum path.
/// Desk-scale only (N <= 64).
class OraclePropagator {
 public:
  explicit OraclePropagator(const ModelParams& params, int max_n_spins = 64);

  JointState at(const Matrix2c& rho_s0, double t) const;
  Matrix2c reduced_system(const Matrix2c& rho_s0, double t) const;
  const DenseOperators& operators() const { return ops_; }

 private:
  ModelParams params_;
  DenseOperators ops_;
  Eigen::VectorXd eigenvalues_;
  MatrixXc eigenvectors_;
  ArrayXd bath_weights_;
};

JointState oracle_propagate(const QubitState& rho0, const ModelParams& params,
                            double t);

}  // namespace cspin
