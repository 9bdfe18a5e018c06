#pragma once

#include <cstdint>

#include "rissop/types.hpp"

namespace rissop {

/// Counter-based seeded randomness. Every draw is keyed by a (seed, stream)
/// pair, so Monte Carlo trials can be sharded across workers while serial and
/// parallel runs reproduce the same numbers bit for bit.

/// splitmix64 step; advances state and returns the next output word.
std::uint64_t splitmix64(std::uint64_t& state);

/// Deterministic combiner used to derive sub-seeds (per scenario cell, per
/// solver, per trial) from a root seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0,
                       std::uint64_t c = 0);

/// xoshiro256++ keyed by (seed, stream) through a splitmix64 chain.
class Xoshiro256pp {
 public:
  Xoshiro256pp(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next();

  /// Uniform on [0,1), 53-bit resolution.
  double uniform01();

  /// Circularly-symmetric complex Gaussian, E|z|^2 = 1 (real and imaginary
  /// parts each of variance 1/2), via the polar Box-Muller form.
  Complex cnormal();

 private:
  std::uint64_t s_[4];
};

/// i.i.d. CN(0,1) matrix, row-major fill order. Identical
/// (seed, stream, rows, cols) reproduce the identical matrix.
CMatrix sample_rayleigh(Eigen::Index rows, Eigen::Index cols,
                        std::uint64_t seed, std::uint64_t stream);

/// Fills a preallocated matrix with the same entries sample_rayleigh would
/// produce for the same key.
void fill_rayleigh(CMatrix& out, std::uint64_t seed, std::uint64_t stream);

/// Random unit-norm complex vector (Gaussian direction, normalized).
CVector random_unit_vector(Eigen::Index n, std::uint64_t seed,
                           std::uint64_t stream);

/// Phase vector with i.i.d. uniform angles on [0, 2*pi).
PhaseVector random_phase_vector(Eigen::Index n, std::uint64_t seed,
                                std::uint64_t stream);

}  // namespace rissop
