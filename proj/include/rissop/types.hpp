#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace rissop {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Antenna/element counts, existence scalars, power budget, noise powers and
/// the PLS coding rate describing one wiretap scenario.
struct SystemConfig {
  int n_t = 1;  // Alice antennas
  int n_r = 1;  // Bob antennas
  int n_e = 1;  // Eve antennas
  int n_s = 1;  // RIS elements

  double alpha = 1.0;  // Alice->Bob direct-link existence scalar, in [0,1]
  double beta = 1.0;   // Alice->Eve direct-link existence scalar, in [0,1]

  double rho = 1.0;       // transmit power budget, watts
  double sigma2 = 1.0;    // noise power at Bob, watts
  double sigma_e2 = 1.0;  // noise power at Eve, watts
  double r_s = 1.0;       // PLS coding rate, bits/s/Hz

  void validate() const;

  double snr_db() const { return 10.0 * std::log10(rho / sigma2); }
};

/// Instantaneous channels of the legitimate links.
struct ChannelSet {
  CMatrix h_b;    // N_r x N_t, Alice -> Bob
  CMatrix h_ris;  // N_s x N_t, Alice -> RIS
  CMatrix g_r;    // N_r x N_s, RIS -> Bob

  void validate(const SystemConfig& cfg) const;
};

/// Eavesdropper channels. Only Monte Carlo sampling constructs these; the
/// closed-form path never reads them.
struct EveChannels {
  CMatrix h_e;  // N_e x N_t, Alice -> Eve
  CMatrix g_e;  // N_e x N_s, RIS -> Eve
};

/// Unit-modulus RIS phase coefficients q with Phi = diag(q). Phases are kept
/// as complex values on the circle, never as raw angles.
class PhaseVector {
 public:
  static PhaseVector ones(Eigen::Index n);
  static PhaseVector from_angles(const Eigen::VectorXd& theta);
  /// Normalizes each entry onto the unit circle; throws on a zero entry.
  static PhaseVector unit(const CVector& q);

  const CVector& coeffs() const { return q_; }
  Eigen::Index size() const { return q_.size(); }
  Eigen::VectorXd angles() const;

 private:
  explicit PhaseVector(CVector q) : q_(std::move(q)) {}
  CVector q_;
};

/// Transmit direction b (unit norm) and power p, with w = sqrt(p) * b.
struct Beamformer {
  CVector b;
  double p = 1.0;

  /// Normalizes v; throws if v is zero or p is not positive.
  static Beamformer make(const CVector& v, double p);

  CVector w() const { return std::sqrt(p) * b; }
};

/// Link-budget parameters: carrier bandwidth, receiver noise figure, and the
/// optional per-link amplitude multipliers applied to generated channels.
struct NoiseModel {
  double bandwidth_hz = 20e6;
  double noise_figure_db = 10.0;
  double gain_alice_bob = 1.0;
  double gain_alice_ris = 1.0;
  double gain_ris_bob = 1.0;

  void validate() const;
};

}  // namespace rissop
