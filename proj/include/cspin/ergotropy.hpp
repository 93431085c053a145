#pragma once

#include <vector>

#include "cspin/dynamics.hpp"

namespace cspin {

/// Tr[rho H] - Tr[rho_p H] with the passive state pairing descending
/// populations with ascending energies.  Degenerate spectra may be ordered
/// arbitrarily; the value is invariant.
double ergotropy_general(const MatrixXc& rho, const MatrixXc& hamiltonian);

/// Qubit closed form (omega0/2)[z + sqrt(x^2+y^2+z^2)].
double ergotropy_bloch(const QubitState& state, double omega0);

struct ErgotropySplit {
  double total = 0.0;
  double incoherent = 0.0;  ///< ergotropy of the dephased state
  double coherent = 0.0;    ///< total - incoherent
};

/// omega0*z for z > 0 (else 0) plus the coherent remainder.
ErgotropySplit ergotropy_split(const QubitState& state, double omega0);

struct ErgotropyRecord {
  double t = 0.0;
  double total = 0.0;
  double incoherent = 0.0;
  double coherent = 0.0;
  double eta = 0.0;
  bool charging = false;  ///< eta > 1/2
};

struct ChargingSeries {
  std::vector<ErgotropyRecord> records;
  int crossing_count = 0;  ///< sign changes of eta - 1/2 along the grid
  int charging_samples = 0;
};

/// Ground-state start: W(t) = (omega0/2)[z + |z|] with z = 2 eta - 1, so the
/// bath charges the battery exactly where eta(t) > 1/2.
ChargingSeries charging_trajectory(const ModelParams& params,
                                   const std::vector<double>& times);

}  // namespace cspin
