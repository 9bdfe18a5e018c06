#pragma once

#include "rissop/types.hpp"

namespace rissop {

/// Effective main channel alpha*H_b + G_r*diag(q)*H, size N_r x N_t.
CMatrix effective_main_channel(const SystemConfig& cfg, const ChannelSet& ch,
                               const PhaseVector& phase);

/// Main-channel capacity log2(1 + |M w|^2 / sigma^2) with w = sqrt(p) b.
double main_capacity(const SystemConfig& cfg, const ChannelSet& ch,
                     const PhaseVector& phase, const Beamformer& bf);

/// Single-antenna-Alice capacity log2(1 + (p/sigma^2)|alpha h_b + G_r diag(q) h_0|^2).
double main_capacity_single_alice(const SystemConfig& cfg,
                                  const ChannelSet& ch,
                                  const PhaseVector& phase, double p);

/// Single-antenna-Bob capacity log2(1 + (p/sigma^2)|(alpha h_b^H + h^H diag(q) H) b|^2).
double main_capacity_single_bob(const SystemConfig& cfg, const ChannelSet& ch,
                                const PhaseVector& phase,
                                const Beamformer& bf);

/// Thermal noise floor -174 dBm/Hz + 10 log10(W) + NF, in dBm.
double noise_floor_dbm(const NoiseModel& nm);

double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

/// Seeded legitimate channels for a configuration, with the noise model's
/// per-link amplitude multipliers applied. Streams 0, 1, 2 feed h_b, h_ris
/// and g_r respectively.
ChannelSet generate_channels(const SystemConfig& cfg, std::uint64_t seed,
                             const NoiseModel& nm = NoiseModel{});

}  // namespace rissop
