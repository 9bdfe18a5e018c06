#pragma once

#include <cstdint>
#include <utility>

#include "rissop/types.hpp"

namespace rissop {

/// Binomial estimate of an outage probability.
struct McEstimate {
  double p_hat = 0.0;
  std::uint64_t trials = 0;
  double std_err = 0.0;  // sqrt(p_hat (1 - p_hat) / trials)
  std::uint64_t seed = 0;
};

/// Empirical secrecy outage probability: draws independent eavesdropper
/// channel realizations and counts the fraction whose wiretap gain
/// |(beta H_e + G_e diag(q) H) b|^2 reaches the outage threshold. Trials are
/// sharded with per-trial RNG streams and reduced in shard order, so the
/// result is identical for any worker count.
McEstimate empirical_sop(const SystemConfig& cfg, const ChannelSet& ch,
                         const PhaseVector& phase, const Beamformer& bf,
                         std::uint64_t trials, std::uint64_t seed,
                         int n_threads = 1);

/// Sample mean and unbiased sample variance of the wiretap-gain variable
/// x = |beta a + C u|^2 with a ~ CN(0, I_m), C ~ CN(0, I_m x I_n).
std::pair<double, double> empirical_gain_moments(double beta, int m,
                                                 const CVector& u,
                                                 std::uint64_t trials,
                                                 std::uint64_t seed,
                                                 int n_threads = 1);

/// Kolmogorov-Smirnov sup-distance between the empirical CDF of x draws and
/// the closed-form gain CDF. scale_override replaces the model scale
/// beta^2 + |u|^2 when positive (used for negative controls).
double empirical_cdf_distance(double beta, int m, const CVector& u,
                              std::uint64_t trials, std::uint64_t seed,
                              double scale_override = 0.0);

}  // namespace rissop
