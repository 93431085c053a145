#include "cspin/ergotropy.hpp"

#include <algorithm>
#include <cmath>

namespace cspin {

double ergotropy_general(const MatrixXc& rho, const MatrixXc& hamiltonian) {
  if (rho.rows() != hamiltonian.rows())
    throw ConfigError("state and Hamiltonian dimensions differ");
  Eigen::SelfAdjointEigenSolver<MatrixXc> srho(rho, Eigen::EigenvaluesOnly);
  Eigen::SelfAdjointEigenSolver<MatrixXc> sham(hamiltonian,
                                               Eigen::EigenvaluesOnly);
  Eigen::VectorXd pops = srho.eigenvalues();    // ascending
  const Eigen::VectorXd& levels = sham.eigenvalues();  // ascending
  std::sort(pops.data(), pops.data() + pops.size(), std::greater<double>());
  double passive = 0.0;
  for (int k = 0; k < pops.size(); ++k) passive += pops[k] * levels[k];
  return (rho * hamiltonian).trace().real() - passive;
}

double ergotropy_bloch(const QubitState& state, double omega0) {
  return 0.5 * omega0 * (state.z + state.radius());
}

ErgotropySplit ergotropy_split(const QubitState& state, double omega0) {
  ErgotropySplit split;
  split.total = ergotropy_bloch(state, omega0);
  split.incoherent = state.z > 0.0 ? omega0 * state.z : 0.0;
  split.coherent = split.total - split.incoherent;
  return split;
}

ChargingSeries charging_trajectory(const ModelParams& params,
                                   const std::vector<double>& times) {
  const TripletEvaluator eval(params);
  ChargingSeries series;
  series.records.reserve(times.size());
  bool prev_charging = false;
  for (size_t k = 0; k < times.size(); ++k) {
    const double eta = eval.population_eta(times[k]);
    ErgotropyRecord rec;
    rec.t = times[k];
    rec.eta = eta;
    const double z = 2.0 * eta - 1.0;
    rec.total = 0.5 * params.omega0 * (z + std::abs(z));
    rec.incoherent = rec.total;  // ground start keeps x = y = 0
    rec.coherent = 0.0;
    rec.charging = eta > 0.5;
    if (rec.charging) ++series.charging_samples;
    if (k > 0 && rec.charging != prev_charging) ++series.crossing_count;
    prev_charging = rec.charging;
    series.records.push_back(rec);
  }
  return series;
}

}  // namespace cspin
