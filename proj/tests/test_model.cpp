#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rissop/model.hpp"
#include "rissop/rng.hpp"

using namespace rissop;

namespace {

ChannelSet scalar_channels(double h_b, double h, double g_r) {
  ChannelSet ch;
  ch.h_b = CMatrix::Constant(1, 1, h_b);
  ch.h_ris = CMatrix::Constant(1, 1, h);
  ch.g_r = CMatrix::Constant(1, 1, g_r);
  return ch;
}

}  // namespace

TEST_CASE("sample_rayleigh is deterministic per (seed, stream)") {
  const CMatrix a = sample_rayleigh(2, 3, 7, 0);
  const CMatrix b = sample_rayleigh(2, 3, 7, 0);
  REQUIRE(a.rows() == 2);
  REQUIRE(a.cols() == 3);
  CHECK((a - b).norm() == 0.0);  // bitwise identical

  const CMatrix c = sample_rayleigh(2, 3, 7, 1);
  CHECK((a - c).norm() > 0.0);
  const CMatrix d = sample_rayleigh(2, 3, 8, 0);
  CHECK((a - d).norm() > 0.0);
}

TEST_CASE("sample_rayleigh rejects empty shapes") {
  CHECK_THROWS_AS(sample_rayleigh(0, 3, 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(sample_rayleigh(3, 0, 1, 0), std::invalid_argument);
}

TEST_CASE("sample_rayleigh entries have unit second moment") {
  const CMatrix m = sample_rayleigh(1000, 1000, 42, 0);
  const double mean_sq = m.squaredNorm() / static_cast<double>(m.size());
  CHECK(mean_sq > 0.99);
  CHECK(mean_sq < 1.01);
}

TEST_CASE("main_capacity on the all-scalar system") {
  SystemConfig cfg;
  cfg.rho = 3.0;
  const ChannelSet ch = scalar_channels(1.0, 1.0, 1.0);
  const Beamformer bf{CVector::Ones(1), 3.0};
  // alpha H_b + G_r q H = 2, gain = 3 * 4
  CHECK(main_capacity(cfg, ch, PhaseVector::ones(1), bf) ==
        doctest::Approx(std::log2(13.0)).epsilon(1e-12));
}

TEST_CASE("main_capacity vanishes for a dead channel") {
  SystemConfig cfg;
  cfg.alpha = 0.0;
  const ChannelSet ch = scalar_channels(1.0, 0.0, 1.0);
  CHECK(main_capacity(cfg, ch, PhaseVector::ones(1),
                      Beamformer{CVector::Ones(1), 1.0}) == 0.0);
}

TEST_CASE("main_capacity grows strictly with power") {
  SystemConfig cfg;
  cfg.n_t = 3;
  cfg.n_r = 2;
  cfg.n_s = 4;
  cfg.rho = 64.0;
  const ChannelSet ch = generate_channels(cfg, 5);
  const PhaseVector q = random_phase_vector(4, 5, 9);
  const CVector dir = random_unit_vector(3, 5, 10);
  double prev = -1.0;
  for (double p = 0.5; p <= 64.0; p *= 2.0) {
    const double c = main_capacity(cfg, ch, q, Beamformer{dir, p});
    CHECK(c > prev);
    prev = c;
  }
}

TEST_CASE("main_capacity is invariant to a global beamformer phase") {
  SystemConfig cfg;
  cfg.n_t = 4;
  cfg.n_r = 3;
  cfg.n_s = 8;
  const ChannelSet ch = generate_channels(cfg, 17);
  const PhaseVector q = random_phase_vector(8, 18, 0);
  const CVector dir = random_unit_vector(4, 19, 0);
  const double base = main_capacity(cfg, ch, q, Beamformer{dir, 1.0});
  for (double psi : {0.3, 1.2, 2.9}) {
    const CVector rotated = std::polar(1.0, psi) * dir;
    CHECK(std::abs(main_capacity(cfg, ch, q, Beamformer{rotated, 1.0}) -
                   base) <= 1e-12);
  }
}

TEST_CASE("main_capacity rejects inconsistent dimensions") {
  SystemConfig cfg;
  cfg.n_t = 2;
  const ChannelSet ch = scalar_channels(1.0, 1.0, 1.0);  // 1x1 channels
  CHECK_THROWS_AS(main_capacity(cfg, ch, PhaseVector::ones(1),
                                Beamformer{CVector::Ones(2) / std::sqrt(2.0),
                                           1.0}),
                  std::invalid_argument);
}

TEST_CASE("single-Alice capacity") {
  SystemConfig cfg;
  cfg.rho = 1.0;
  SUBCASE("zero channels give zero rate") {
    const ChannelSet ch = scalar_channels(0.0, 0.0, 1.0);
    CHECK(main_capacity_single_alice(cfg, ch, PhaseVector::ones(1), 1.0) ==
          0.0);
  }
  SUBCASE("scalar chain") {
    const ChannelSet ch = scalar_channels(1.0, 1.0, 1.0);
    CHECK(main_capacity_single_alice(cfg, ch, PhaseVector::ones(1), 1.0) ==
          doctest::Approx(std::log2(5.0)).epsilon(1e-12));
  }
  SUBCASE("matches the general path at n_t = 1") {
    SystemConfig c2;
    c2.n_t = 1;
    c2.n_r = 3;
    c2.n_s = 4;
    c2.rho = 2.0;
    const ChannelSet ch = generate_channels(c2, 23);
    const PhaseVector q = random_phase_vector(4, 24, 0);
    const double a = main_capacity_single_alice(c2, ch, q, 2.0);
    const double b =
        main_capacity(c2, ch, q, Beamformer{CVector::Ones(1), 2.0});
    CHECK(std::abs(a - b) <= 1e-12);
  }
  SUBCASE("requires n_t == 1") {
    SystemConfig c2;
    c2.n_t = 2;
    const ChannelSet ch = generate_channels(c2, 1);
    CHECK_THROWS_AS(
        main_capacity_single_alice(c2, ch, PhaseVector::ones(1), 1.0),
        std::invalid_argument);
  }
}

TEST_CASE("single-Bob capacity") {
  SystemConfig cfg;
  cfg.n_t = 4;
  cfg.n_r = 1;
  cfg.n_s = 3;
  cfg.rho = 2.5;
  const ChannelSet ch = generate_channels(cfg, 31);
  const PhaseVector q = random_phase_vector(3, 32, 0);

  SUBCASE("matches the general path") {
    const Beamformer bf{random_unit_vector(4, 33, 0), 2.5};
    const double a = main_capacity_single_bob(cfg, ch, q, bf);
    const double b = main_capacity(cfg, ch, q, bf);
    CHECK(std::abs(a - b) <= 1e-12);
  }
  SUBCASE("orthogonal beamformer gives zero rate") {
    const CMatrix m =
        cfg.alpha * ch.h_b + ch.g_r * q.coeffs().asDiagonal() * ch.h_ris;
    // Build a unit vector orthogonal to the single row of m.
    CVector row = m.row(0).adjoint();
    CVector other = CVector::Zero(4);
    other[0] = -std::conj(row[1]);
    other[1] = std::conj(row[0]);
    other /= other.norm();
    CHECK(std::abs((m * other)(0)) <= 1e-12 * row.norm());
    CHECK(main_capacity_single_bob(cfg, ch, q, Beamformer{other, 2.5}) <=
          1e-20);
  }
  SUBCASE("requires n_r == 1") {
    SystemConfig c2;
    c2.n_r = 2;
    c2.n_t = 4;
    c2.n_s = 3;
    const ChannelSet ch2 = generate_channels(c2, 3);
    CHECK_THROWS_AS(main_capacity_single_bob(c2, ch2, q,
                                             Beamformer{
                                                 random_unit_vector(4, 1, 0),
                                                 1.0}),
                    std::invalid_argument);
  }
}

TEST_CASE("noise floor") {
  NoiseModel nm;
  nm.bandwidth_hz = 20e6;
  nm.noise_figure_db = 10.0;
  CHECK(noise_floor_dbm(nm) ==
        doctest::Approx(-90.98970004336019).epsilon(1e-14));

  nm.bandwidth_hz = 1.0;
  nm.noise_figure_db = 0.0;
  CHECK(noise_floor_dbm(nm) == doctest::Approx(-174.0).epsilon(1e-14));

  nm.bandwidth_hz = 0.0;
  CHECK_THROWS_AS(noise_floor_dbm(nm), std::invalid_argument);
}

TEST_CASE("dBm round trip") {
  for (double dbm : {-90.0, -30.0, 0.0, 17.5}) {
    const double w = dbm_to_watts(dbm);
    CHECK(std::abs(watts_to_dbm(w) - dbm) <= 1e-13 * std::max(1.0, std::abs(dbm)));
  }
  CHECK_THROWS_AS(watts_to_dbm(0.0), std::invalid_argument);
}

TEST_CASE("config validation") {
  SystemConfig cfg;
  cfg.alpha = 1.5;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.alpha = 0.5;
  cfg.rho = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.rho = 1.0;
  cfg.r_s = -1.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("phase vector stays on the circle") {
  const PhaseVector q = random_phase_vector(64, 99, 0);
  for (Eigen::Index i = 0; i < q.size(); ++i)
    CHECK(std::abs(std::abs(q.coeffs()[i]) - 1.0) <= 1e-12);

  CVector raw(3);
  raw << Complex(3.0, 4.0), Complex(0.0, -2.0), Complex(1.0, 0.0);
  const PhaseVector u = PhaseVector::unit(raw);
  for (Eigen::Index i = 0; i < 3; ++i)
    CHECK(std::abs(std::abs(u.coeffs()[i]) - 1.0) <= 1e-12);

  raw[1] = 0.0;
  CHECK_THROWS_AS(PhaseVector::unit(raw), std::invalid_argument);
}

TEST_CASE("beamformer construction normalizes") {
  CVector v(2);
  v << Complex(3.0, 0.0), Complex(0.0, 4.0);
  const Beamformer bf = Beamformer::make(v, 2.0);
  CHECK(std::abs(bf.b.norm() - 1.0) <= 1e-12);
  CHECK(bf.w().norm() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK_THROWS_AS(Beamformer::make(CVector::Zero(2), 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(Beamformer::make(v, 0.0), std::invalid_argument);
}

TEST_CASE("generated channels respect link multipliers") {
  SystemConfig cfg;
  cfg.n_t = 2;
  cfg.n_r = 2;
  cfg.n_s = 3;
  NoiseModel nm;
  nm.gain_alice_bob = 0.5;
  const ChannelSet plain = generate_channels(cfg, 7);
  const ChannelSet scaled = generate_channels(cfg, 7, nm);
  CHECK((scaled.h_b - 0.5 * plain.h_b).norm() == 0.0);
  CHECK((scaled.h_ris - plain.h_ris).norm() == 0.0);
}
