#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace cspin {

using Complex = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;
using Matrix4c = Eigen::Matrix4cd;
using Vector4c = Eigen::Vector4cd;
using MatrixXc = Eigen::MatrixXcd;
using VectorXc = Eigen::VectorXcd;
using ArrayXd = Eigen::ArrayXd;
using ArrayXc = Eigen::ArrayXcd;

inline constexpr Complex kImag{0.0, 1.0};

/// Base for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Invalid parameters, grids, or configuration input (CLI exit code 2).
struct ConfigError : Error {
  using Error::Error;
};

/// A numerical guard tripped; the computation cannot proceed as requested
/// (CLI exit code 3).
struct NumericalGuard : Error {
  using Error::Error;
};

/// epsilon = 0: the chi_pm closed forms degenerate, callers must take the
/// exact tensor-product treatment instead of the spectral formulas.
struct DecoupledModel : NumericalGuard {
  using NumericalGuard::NumericalGuard;
};

struct DimensionTooLarge : NumericalGuard {
  using NumericalGuard::NumericalGuard;
};

/// Phi(t) is not invertible at this instant (alpha = eta or delta = 0).
struct MapSingular : NumericalGuard {
  explicit MapSingular(double t_)
      : NumericalGuard("dynamical map singular at t = " + std::to_string(t_)),
        t(t_) {}
  double t;
};

/// Theta(t) = 0: the closed-form canonical Hamiltonian has a removable
/// singularity; callers fall back to the pseudo-Kraus route.
struct ThetaSingular : NumericalGuard {
  explicit ThetaSingular(double t_)
      : NumericalGuard("Theta(t) vanishes at t = " + std::to_string(t_)), t(t_) {}
  double t;
};

struct EigenvalueUnderflow : NumericalGuard {
  using NumericalGuard::NumericalGuard;
};

struct EnergyOutOfRange : NumericalGuard {
  using NumericalGuard::NumericalGuard;
};

struct NotHPTA : NumericalGuard {
  using NumericalGuard::NumericalGuard;
};

struct GridTooCoarse : NumericalGuard {
  using NumericalGuard::NumericalGuard;
};

}  // namespace cspin
