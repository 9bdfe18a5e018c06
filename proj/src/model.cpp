#include "rissop/model.hpp"

#include <cmath>

#include "rissop/rng.hpp"

namespace rissop {

namespace {

void check_phase_size(const SystemConfig& cfg, const PhaseVector& phase) {
  if (phase.size() != cfg.n_s)
    throw std::invalid_argument("phase vector length must equal n_s");
}

void check_beamformer(const SystemConfig& cfg, const Beamformer& bf) {
  if (bf.b.size() != cfg.n_t)
    throw std::invalid_argument("beamformer length must equal n_t");
  if (bf.p > cfg.rho * (1.0 + 1e-9))
    throw std::invalid_argument("transmit power exceeds the budget rho");
}

double log2_1p(double x) { return std::log1p(x) / M_LN2; }

}  // namespace

CMatrix effective_main_channel(const SystemConfig& cfg, const ChannelSet& ch,
                               const PhaseVector& phase) {
  ch.validate(cfg);
  check_phase_size(cfg, phase);
  return cfg.alpha * ch.h_b +
         ch.g_r * phase.coeffs().asDiagonal() * ch.h_ris;
}

double main_capacity(const SystemConfig& cfg, const ChannelSet& ch,
                     const PhaseVector& phase, const Beamformer& bf) {
  check_beamformer(cfg, bf);
  const CMatrix m = effective_main_channel(cfg, ch, phase);
  const double gain = (m * bf.b).squaredNorm();
  return log2_1p(bf.p * gain / cfg.sigma2);
}

double main_capacity_single_alice(const SystemConfig& cfg,
                                  const ChannelSet& ch,
                                  const PhaseVector& phase, double p) {
  if (cfg.n_t != 1)
    throw std::invalid_argument("single-Alice capacity requires n_t == 1");
  return main_capacity(cfg, ch, phase, Beamformer::make(CVector::Ones(1), p));
}

double main_capacity_single_bob(const SystemConfig& cfg, const ChannelSet& ch,
                                const PhaseVector& phase,
                                const Beamformer& bf) {
  if (cfg.n_r != 1)
    throw std::invalid_argument("single-Bob capacity requires n_r == 1");
  return main_capacity(cfg, ch, phase, bf);
}

double noise_floor_dbm(const NoiseModel& nm) {
  nm.validate();
  return -174.0 + 10.0 * std::log10(nm.bandwidth_hz) + nm.noise_figure_db;
}

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double watts_to_dbm(double watts) {
  if (!(watts > 0.0))
    throw std::invalid_argument("watts must be positive for dBm conversion");
  return 10.0 * std::log10(watts) + 30.0;
}

ChannelSet generate_channels(const SystemConfig& cfg, std::uint64_t seed,
                             const NoiseModel& nm) {
  cfg.validate();
  nm.validate();
  ChannelSet ch;
  ch.h_b = nm.gain_alice_bob * sample_rayleigh(cfg.n_r, cfg.n_t, seed, 0);
  ch.h_ris = nm.gain_alice_ris * sample_rayleigh(cfg.n_s, cfg.n_t, seed, 1);
  ch.g_r = nm.gain_ris_bob * sample_rayleigh(cfg.n_r, cfg.n_s, seed, 2);
  return ch;
}

}  // namespace rissop
