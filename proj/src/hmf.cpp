#include "cspin/hmf.hpp"

#include <cmath>

namespace cspin {

namespace {

// log of sum_k c_k exp(-beta*lam_k) with c_k > 0, and the beta-derivative
// of that log (= minus the c-weighted Boltzmann mean of lam)
struct WeightedLse {
  double log_sum;
  double dlog_dbeta;
};

WeightedLse weighted_lse(const ArrayXd& lam, const ArrayXd& coeff,
                         double beta) {
  ArrayXd x = -beta * lam;
  const double shift = x.maxCoeff();
  const ArrayXd w = coeff * (x - shift).exp();
  const double total = w.sum();
  WeightedLse out;
  out.log_sum = shift + std::log(total);
  out.dlog_dbeta = -(w * lam).sum() / total;
  return out;
}

// d/dbeta of log xi(beta)
double dlog_xi(const ModelParams& params, double beta) {
  const int n = params.n_spins;
  const double w = params.omega;
  const double x1 = beta * w * (n + 1) / (2.0 * n);
  const double x2 = beta * w / (2.0 * n);
  return (w * (n + 1) / (2.0 * n)) / std::tanh(x1) -
         (w / (2.0 * n)) / std::tanh(x2);
}

PiLogElements decoupled_pi(const ModelParams& params, double beta) {
  PiLogElements out;
  out.log_pi00 = -beta * params.omega0 / 2.0;
  out.log_pi11 = beta * params.omega0 / 2.0;
  out.dlog_pi00 = -params.omega0 / 2.0;
  out.dlog_pi11 = params.omega0 / 2.0;
  return out;
}

}  // namespace

PiLogElements pi_log_elements(const Spectrum& spectrum,
                              const ModelParams& params, double beta) {
  const int n = params.n_spins;
  ModelParams at_beta = params;
  at_beta.beta = beta;
  const double lxi = log_xi(at_beta);
  const double dlxi = dlog_xi(params, beta);

  // levels entering pi00: both branches weighted by |<0,n|psi_pm>|^2 plus
  // the |0,0> corner; pi11 analogously with |<1,n-1|psi_pm>|^2 and |1,N>
  ArrayXd lam(2 * n + 1), c00(2 * n + 1), c11(2 * n + 1);
  lam.head(n) = spectrum.lambda_plus;
  lam.segment(n, n) = spectrum.lambda_minus;
  lam[2 * n] = spectrum.edge_plus;
  c00.head(n) = spectrum.up_plus();
  c00.segment(n, n) = spectrum.up_minus();
  c00[2 * n] = 1.0;
  c11.head(n) = spectrum.down_plus();
  c11.segment(n, n) = spectrum.down_minus();
  c11[2 * n] = 0.0;

  const WeightedLse a00 = weighted_lse(lam, c00, beta);
  // pi11's corner has energy edge_minus; swap it in
  lam[2 * n] = spectrum.edge_minus;
  c11[2 * n] = 1.0;
  // guard the zero coefficient rows for pi11 (c11 of the swapped corner)
  const WeightedLse a11 = weighted_lse(lam, c11, beta);

  PiLogElements out;
  out.log_pi00 = a00.log_sum - lxi;
  out.log_pi11 = a11.log_sum - lxi;
  out.dlog_pi00 = a00.dlog_dbeta - dlxi;
  out.dlog_pi11 = a11.dlog_dbeta - dlxi;
  return out;
}

std::pair<double, double> pi_elements(const Spectrum& spectrum,
                                      const ModelParams& params, double beta) {
  const PiLogElements logs = pi_log_elements(spectrum, params, beta);
  return {std::exp(logs.log_pi00), std::exp(logs.log_pi11)};
}

Matrix2c hamiltonian_mean_force(double pi00, double pi11, double beta) {
  if (!(pi00 > 0.0) || !(pi11 > 0.0))
    throw NumericalGuard("pi elements must be positive");
  Matrix2c h = Matrix2c::Zero();
  h(0, 0) = -std::log(pi00) / beta;
  h(1, 1) = -std::log(pi11) / beta;
  return h;
}

namespace {

double entropy_from_logs(const PiLogElements& logs, double beta) {
  // normalized populations of zeta*_S from the log pi's
  const double m = std::max(logs.log_pi00, logs.log_pi11);
  const double w0 = std::exp(logs.log_pi00 - m);
  const double w1 = std::exp(logs.log_pi11 - m);
  const double p0 = w0 / (w0 + w1), p1 = w1 / (w0 + w1);
  double shannon = 0.0;
  if (p0 > 0.0) shannon -= p0 * std::log(p0);
  if (p1 > 0.0) shannon -= p1 * std::log(p1);
  // beta^2 <d_beta H*> with mu_xx = ln(pi)/beta^2 - dln(pi)/(beta):
  // beta^2 sum mu_xx p_xx = sum p_xx [ln pi_xx - beta dln pi_xx]
  const double corr = p0 * (logs.log_pi00 - beta * logs.dlog_pi00) +
                      p1 * (logs.log_pi11 - beta * logs.dlog_pi11);
  return shannon + corr;
}

}  // namespace

double thermodynamic_entropy(const Spectrum& spectrum,
                             const ModelParams& params, double beta) {
  return entropy_from_logs(pi_log_elements(spectrum, params, beta), beta);
}

MeanForceResult mean_force(const ModelParams& params, double beta) {
  params.validate();
  if (!(beta > 0.0)) throw ConfigError("beta must be positive");
  PiLogElements logs;
  if (params.epsilon == 0.0) {
    logs = decoupled_pi(params, beta);
  } else {
    const Spectrum sp = build_spectrum(params);
    logs = pi_log_elements(sp, params, beta);
  }
  MeanForceResult res;
  res.beta = beta;
  res.log_pi00 = logs.log_pi00;
  res.log_pi11 = logs.log_pi11;
  res.pi00 = std::exp(logs.log_pi00);
  res.pi11 = std::exp(logs.log_pi11);
  res.h_star = Matrix2c::Zero();
  res.h_star(0, 0) = -logs.log_pi00 / beta;
  res.h_star(1, 1) = -logs.log_pi11 / beta;
  const double m = std::max(logs.log_pi00, logs.log_pi11);
  const double w0 = std::exp(logs.log_pi00 - m);
  const double w1 = std::exp(logs.log_pi11 - m);
  res.gibbs_state = Matrix2c::Zero();
  res.gibbs_state(0, 0) = w0 / (w0 + w1);
  res.gibbs_state(1, 1) = w1 / (w0 + w1);
  res.s_thermo = entropy_from_logs(logs, beta);
  const double d0 = res.h_star(0, 0).real() - params.omega0 / 2.0;
  const double d1 = res.h_star(1, 1).real() + params.omega0 / 2.0;
  res.hs_norm_diff = std::hypot(d0, d1);
  return res;
}

}  // namespace cspin
