#include "rissop/rng.hpp"

#include <cmath>

namespace rissop {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                       std::uint64_t c) {
  std::uint64_t x = seed;
  std::uint64_t h = splitmix64(x);
  x ^= a * 0x9e3779b97f4a7c15ULL + 0x85ebca6b2b2ae35ULL;
  h ^= splitmix64(x);
  x ^= b * 0xc2b2ae3d27d4eb4fULL + 0x165667b19e3779f9ULL;
  h ^= splitmix64(x);
  x ^= c * 0xd6e8feb86659fd93ULL + 0x2545f4914f6cdd1dULL;
  h ^= splitmix64(x);
  return h;
}

namespace {

inline std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace

Xoshiro256pp::Xoshiro256pp(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t x = seed;
  std::uint64_t k = splitmix64(x);
  x = k ^ (stream * 0x9e3779b97f4a7c15ULL + 0xbf58476d1ce4e5b9ULL);
  for (auto& s : s_) s = splitmix64(x);
  if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
}

std::uint64_t Xoshiro256pp::next() {
  const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Xoshiro256pp::uniform01() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

Complex Xoshiro256pp::cnormal() {
  // |z|^2 ~ Exp(1): z = sqrt(-ln u1) * exp(i 2 pi u2), u1 in (0,1].
  const double u1 = (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = uniform01();
  const double r = std::sqrt(-std::log(u1));
  return std::polar(r, 2.0 * M_PI * u2);
}

void fill_rayleigh(CMatrix& out, std::uint64_t seed, std::uint64_t stream) {
  Xoshiro256pp gen(seed, stream);
  for (Eigen::Index i = 0; i < out.rows(); ++i)
    for (Eigen::Index j = 0; j < out.cols(); ++j) out(i, j) = gen.cnormal();
}

CMatrix sample_rayleigh(Eigen::Index rows, Eigen::Index cols,
                        std::uint64_t seed, std::uint64_t stream) {
  if (rows < 1 || cols < 1)
    throw std::invalid_argument("sample_rayleigh needs rows, cols >= 1");
  CMatrix out(rows, cols);
  fill_rayleigh(out, seed, stream);
  return out;
}

CVector random_unit_vector(Eigen::Index n, std::uint64_t seed,
                           std::uint64_t stream) {
  if (n < 1) throw std::invalid_argument("random_unit_vector needs n >= 1");
  Xoshiro256pp gen(seed, stream);
  CVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = gen.cnormal();
  const double norm = v.norm();
  if (!(norm > 0.0)) return random_unit_vector(n, seed, stream + 1);
  return v / norm;
}

PhaseVector random_phase_vector(Eigen::Index n, std::uint64_t seed,
                                std::uint64_t stream) {
  if (n < 1) throw std::invalid_argument("random_phase_vector needs n >= 1");
  Xoshiro256pp gen(seed, stream);
  Eigen::VectorXd theta(n);
  for (Eigen::Index i = 0; i < n; ++i) theta[i] = 2.0 * M_PI * gen.uniform01();
  return PhaseVector::from_angles(theta);
}

}  // namespace rissop
