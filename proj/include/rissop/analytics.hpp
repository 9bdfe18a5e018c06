#pragma once

#include "rissop/types.hpp"

namespace rissop {

/// Shape/scale of the exact Gamma law of the wiretap gain |beta*a + C*u|^2:
/// shape m, scale beta^2 + |u|^2.
struct GammaFit {
  int shape = 1;
  double scale = 1.0;
};

GammaFit gamma_fit(double beta, int m, double u_norm2);

/// Regularized upper incomplete gamma Gamma(m, z)/Gamma(m) for integer
/// m >= 1, evaluated by the finite Poisson series in log space. Returns 1
/// for z <= 0. Result always lies in [0, 1].
double reg_upper_gamma(int m, double z);

/// CDF of the wiretap gain: 1 - reg_upper_gamma(m, x / (beta^2 + |u|^2)).
double gain_cdf(double beta, int m, double u_norm2, double x);

/// Precomputed quantities the outage expression consumes.
struct SopInputs {
  SystemConfig cfg;
  double c_m = 0.0;        // main-channel capacity, bits/s/Hz
  double phase_gain = 0.0; // |diag(q) H b|^2
  double p = 1.0;          // actual transmit power
};

SopInputs make_sop_inputs(const SystemConfig& cfg, const ChannelSet& ch,
                          const PhaseVector& phase, const Beamformer& bf);

/// Secrecy outage probability for the wiretap-gain scale beta^2 + phase_gain
/// and phi_1 = sigma_e^2 (2^{c_m - r_s} - 1) / p. A nonpositive phi_1
/// (r_s >= c_m) means certain outage and returns exactly 1.
double sop_outage(const SopInputs& in);

double sop_theory(const SystemConfig& cfg, const ChannelSet& ch,
                  const PhaseVector& phase, const Beamformer& bf);

/// Power-independent high-SNR lower bound on the outage probability.
double sop_high_snr_bound(const SystemConfig& cfg, const ChannelSet& ch,
                          const PhaseVector& phase, const Beamformer& bf);

/// Single-antenna-Alice outage (n_t == 1), transmit power p.
double sop_single_alice(const SystemConfig& cfg, const ChannelSet& ch,
                        const PhaseVector& phase, double p);

/// Single-antenna-Eve outage (n_e == 1), the one-term exponential form.
double sop_single_eve(const SystemConfig& cfg, const ChannelSet& ch,
                      const PhaseVector& phase, const Beamformer& bf);

}  // namespace rissop
