#include "rissop/analytics.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>

#include "rissop/model.hpp"

namespace rissop {

namespace {

// phi = sigma_e^2 (2^{c_m - r_s} - 1) / p, the wiretap-gain threshold.
double outage_threshold(const SystemConfig& cfg, double c_m, double p) {
  return cfg.sigma_e2 * std::expm1((c_m - cfg.r_s) * M_LN2) / p;
}

double wiretap_scale(const SystemConfig& cfg, double phase_gain) {
  const double scale = cfg.beta * cfg.beta + phase_gain;
  if (!(scale > 0.0))
    throw std::domain_error(
        "wiretap-gain channel is identically zero (beta = 0 and H*b = 0)");
  return scale;
}

}  // namespace

GammaFit gamma_fit(double beta, int m, double u_norm2) {
  if (m < 1) throw std::domain_error("gamma shape must be a positive integer");
  if (u_norm2 < 0.0) throw std::invalid_argument("|u|^2 must be nonnegative");
  const double scale = beta * beta + u_norm2;
  if (!(scale > 0.0))
    throw std::domain_error("gamma scale requires beta > 0 or |u| > 0");
  return GammaFit{m, scale};
}

double reg_upper_gamma(int m, double z) {
  if (m < 1)
    throw std::domain_error("reg_upper_gamma shape must be a positive integer");
  if (!(z > 0.0)) return 1.0;

  // Q(m, z) = sum_{k<m} exp(-z + k ln z - ln k!), a sum of Poisson masses.
  // Log-sum-exp keeps the evaluation finite for large m*z.
  const double lz = std::log(z);
  double max_lt = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < m; ++k)
    max_lt = std::max(max_lt, -z + k * lz - std::lgamma(k + 1.0));
  if (max_lt == -std::numeric_limits<double>::infinity()) return 0.0;
  double acc = 0.0;
  for (int k = 0; k < m; ++k)
    acc += std::exp(-z + k * lz - std::lgamma(k + 1.0) - max_lt);
  const double q = std::exp(max_lt + std::log(acc));
  return std::clamp(q, 0.0, 1.0);
}

double gain_cdf(double beta, int m, double u_norm2, double x) {
  if (x < 0.0) throw std::invalid_argument("gain_cdf argument must be >= 0");
  const GammaFit fit = gamma_fit(beta, m, u_norm2);
  return 1.0 - reg_upper_gamma(fit.shape, x / fit.scale);
}

SopInputs make_sop_inputs(const SystemConfig& cfg, const ChannelSet& ch,
                          const PhaseVector& phase, const Beamformer& bf) {
  const double c_m = main_capacity(cfg, ch, phase, bf);
  const CVector ub = phase.coeffs().asDiagonal() * (ch.h_ris * bf.b);
  const double phase_gain = ub.squaredNorm();
  // Unit-modulus phases leave |H b| unchanged; a mismatch means a phase
  // vector escaped normalization.
  assert(std::abs(phase_gain - (ch.h_ris * bf.b).squaredNorm()) <=
         1e-12 * (1.0 + phase_gain));
  return SopInputs{cfg, c_m, phase_gain, bf.p};
}

double sop_outage(const SopInputs& in) {
  const double phi = outage_threshold(in.cfg, in.c_m, in.p);
  if (phi <= 0.0) return 1.0;
  const double scale = wiretap_scale(in.cfg, in.phase_gain);
  return reg_upper_gamma(in.cfg.n_e, phi / scale);
}

double sop_theory(const SystemConfig& cfg, const ChannelSet& ch,
                  const PhaseVector& phase, const Beamformer& bf) {
  return sop_outage(make_sop_inputs(cfg, ch, phase, bf));
}

double sop_high_snr_bound(const SystemConfig& cfg, const ChannelSet& ch,
                          const PhaseVector& phase, const Beamformer& bf) {
  const SopInputs in = make_sop_inputs(cfg, ch, phase, bf);
  const CMatrix m = effective_main_channel(cfg, ch, phase);
  const double main_gain = (m * bf.b).squaredNorm();
  const double scale = wiretap_scale(cfg, in.phase_gain);
  const double z = cfg.sigma_e2 * main_gain /
                   (cfg.sigma2 * std::exp2(cfg.r_s) * scale);
  return reg_upper_gamma(cfg.n_e, z);
}

double sop_single_alice(const SystemConfig& cfg, const ChannelSet& ch,
                        const PhaseVector& phase, double p) {
  if (cfg.n_t != 1)
    throw std::invalid_argument("single-Alice outage requires n_t == 1");
  const double c_m = main_capacity_single_alice(cfg, ch, phase, p);
  const double phi = outage_threshold(cfg, c_m, p);
  if (phi <= 0.0) return 1.0;
  const double scale = wiretap_scale(cfg, ch.h_ris.col(0).squaredNorm());
  return reg_upper_gamma(cfg.n_e, phi / scale);
}

double sop_single_eve(const SystemConfig& cfg, const ChannelSet& ch,
                      const PhaseVector& phase, const Beamformer& bf) {
  if (cfg.n_e != 1)
    throw std::invalid_argument("single-Eve outage requires n_e == 1");
  const SopInputs in = make_sop_inputs(cfg, ch, phase, bf);
  const double phi = outage_threshold(cfg, in.c_m, in.p);
  if (phi <= 0.0) return 1.0;
  return std::exp(-phi / wiretap_scale(cfg, in.phase_gain));
}

}  // namespace rissop
