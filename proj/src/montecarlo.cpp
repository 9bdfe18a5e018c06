#include "rissop/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>
#include <vector>

#include "rissop/analytics.hpp"
#include "rissop/model.hpp"
#include "rissop/rng.hpp"

namespace rissop {

namespace {

constexpr std::uint64_t kShardSize = 4096;

int clamp_threads(int n_threads) {
  if (n_threads <= 0) {
    const unsigned hw = std::thread::hardware_concurrency();
    n_threads = hw ? static_cast<int>(hw) : 1;
  }
  return std::min(n_threads, 64);
}

// Runs fn(shard_index, first_trial, n_trials) over all shards, on up to
// n_threads workers. Shards pull from an atomic counter; each writes only
// its own slot, so the caller can reduce in shard order.
template <typename Fn>
void for_each_shard(std::uint64_t trials, int n_threads, Fn&& fn) {
  const std::uint64_t n_shards = (trials + kShardSize - 1) / kShardSize;
  n_threads = clamp_threads(n_threads);
  if (n_threads == 1 || n_shards == 1) {
    for (std::uint64_t s = 0; s < n_shards; ++s) {
      const std::uint64_t first = s * kShardSize;
      fn(s, first, std::min(kShardSize, trials - first));
    }
    return;
  }
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::uint64_t s = next.fetch_add(1);
      if (s >= n_shards) return;
      const std::uint64_t first = s * kShardSize;
      fn(s, first, std::min(kShardSize, trials - first));
    }
  };
  std::vector<std::thread> pool;
  const int n = std::min<std::uint64_t>(n_threads, n_shards);
  pool.reserve(n);
  for (int i = 0; i < n; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

}  // namespace

McEstimate empirical_sop(const SystemConfig& cfg, const ChannelSet& ch,
                         const PhaseVector& phase, const Beamformer& bf,
                         std::uint64_t trials, std::uint64_t seed,
                         int n_threads) {
  if (trials == 0) throw std::invalid_argument("empirical_sop needs trials >= 1");
  const SopInputs in = make_sop_inputs(cfg, ch, phase, bf);
  const double phi = cfg.sigma_e2 * std::expm1((in.c_m - cfg.r_s) * M_LN2) / bf.p;

  McEstimate est;
  est.trials = trials;
  est.seed = seed;
  if (phi <= 0.0) {
    // r_s >= c_m: every realization is an outage.
    est.p_hat = 1.0;
    est.std_err = 0.0;
    return est;
  }

  const CVector u = phase.coeffs().asDiagonal() * (ch.h_ris * bf.b);
  const double beta = cfg.beta;
  const std::uint64_t n_shards = (trials + kShardSize - 1) / kShardSize;
  std::vector<std::uint64_t> shard_hits(n_shards, 0);

  for_each_shard(trials, n_threads,
                 [&](std::uint64_t s, std::uint64_t first, std::uint64_t n) {
    CMatrix h_e(cfg.n_e, cfg.n_t);
    CMatrix g_e(cfg.n_e, cfg.n_s);
    CVector gain(cfg.n_e);
    std::uint64_t hits = 0;
    for (std::uint64_t t = first; t < first + n; ++t) {
      fill_rayleigh(h_e, seed, 2 * t);
      fill_rayleigh(g_e, seed, 2 * t + 1);
      gain.noalias() = beta * (h_e * bf.b) + g_e * u;
      if (gain.squaredNorm() >= phi) ++hits;
    }
    shard_hits[s] = hits;
  });

  std::uint64_t hits = 0;
  for (std::uint64_t h : shard_hits) hits += h;
  est.p_hat = static_cast<double>(hits) / static_cast<double>(trials);
  est.std_err = std::sqrt(est.p_hat * (1.0 - est.p_hat) /
                          static_cast<double>(trials));
  return est;
}

namespace {

// One draw of x = |beta a + C u|^2 keyed by (seed, trial index).
double draw_gain(double beta, int m, const CVector& u, std::uint64_t seed,
                 std::uint64_t trial, CVector& a, CMatrix& c) {
  Xoshiro256pp gen_a(seed, 2 * trial);
  for (int i = 0; i < m; ++i) a[i] = gen_a.cnormal();
  Xoshiro256pp gen_c(seed, 2 * trial + 1);
  for (int i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < u.size(); ++j) c(i, j) = gen_c.cnormal();
  return (beta * a + c * u).squaredNorm();
}

}  // namespace

std::pair<double, double> empirical_gain_moments(double beta, int m,
                                                 const CVector& u,
                                                 std::uint64_t trials,
                                                 std::uint64_t seed,
                                                 int n_threads) {
  if (trials < 2)
    throw std::invalid_argument("empirical_gain_moments needs trials >= 2");
  if (m < 1) throw std::domain_error("m must be a positive integer");

  const std::uint64_t n_shards = (trials + kShardSize - 1) / kShardSize;
  std::vector<double> shard_sum(n_shards, 0.0), shard_sum2(n_shards, 0.0);
  for_each_shard(trials, n_threads,
                 [&](std::uint64_t s, std::uint64_t first, std::uint64_t n) {
    CVector a(m);
    CMatrix c(m, u.size());
    double acc = 0.0, acc2 = 0.0;
    for (std::uint64_t t = first; t < first + n; ++t) {
      const double x = draw_gain(beta, m, u, seed, t, a, c);
      acc += x;
      acc2 += x * x;
    }
    shard_sum[s] = acc;
    shard_sum2[s] = acc2;
  });

  double sum = 0.0, sum2 = 0.0;
  for (std::uint64_t s = 0; s < n_shards; ++s) {
    sum += shard_sum[s];
    sum2 += shard_sum2[s];
  }
  const double n = static_cast<double>(trials);
  const double mean = sum / n;
  const double var = (sum2 - n * mean * mean) / (n - 1.0);
  return {mean, var};
}

double empirical_cdf_distance(double beta, int m, const CVector& u,
                              std::uint64_t trials, std::uint64_t seed,
                              double scale_override) {
  if (trials < 100)
    throw std::invalid_argument("empirical_cdf_distance needs trials >= 100");
  const double scale =
      scale_override > 0.0 ? scale_override : beta * beta + u.squaredNorm();
  if (!(scale > 0.0))
    throw std::domain_error("degenerate gain distribution (zero scale)");

  std::vector<double> xs(trials);
  CVector a(m);
  CMatrix c(m, u.size());
  for (std::uint64_t t = 0; t < trials; ++t)
    xs[t] = draw_gain(beta, m, u, seed, t, a, c);
  std::sort(xs.begin(), xs.end());

  const double n = static_cast<double>(trials);
  double d = 0.0;
  for (std::uint64_t i = 0; i < trials; ++i) {
    const double f = 1.0 - reg_upper_gamma(m, xs[i] / scale);
    d = std::max(d, std::abs(f - static_cast<double>(i + 1) / n));
    d = std::max(d, std::abs(f - static_cast<double>(i) / n));
  }
  return d;
}

}  // namespace rissop
