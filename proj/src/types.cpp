#include "rissop/types.hpp"

namespace rissop {

namespace {

void check(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

void SystemConfig::validate() const {
  check(n_t >= 1, "n_t must be >= 1");
  check(n_r >= 1, "n_r must be >= 1");
  check(n_e >= 1, "n_e must be >= 1");
  check(n_s >= 1, "n_s must be >= 1");
  check(alpha >= 0.0 && alpha <= 1.0, "alpha must lie in [0,1]");
  check(beta >= 0.0 && beta <= 1.0, "beta must lie in [0,1]");
  check(rho > 0.0, "rho must be positive");
  check(sigma2 > 0.0, "sigma2 must be positive");
  check(sigma_e2 > 0.0, "sigma_e2 must be positive");
  check(r_s > 0.0, "r_s must be positive");
}

void ChannelSet::validate(const SystemConfig& cfg) const {
  check(h_b.rows() == cfg.n_r && h_b.cols() == cfg.n_t,
        "h_b must be n_r x n_t");
  check(h_ris.rows() == cfg.n_s && h_ris.cols() == cfg.n_t,
        "h_ris must be n_s x n_t");
  check(g_r.rows() == cfg.n_r && g_r.cols() == cfg.n_s,
        "g_r must be n_r x n_s");
  check(h_b.allFinite() && h_ris.allFinite() && g_r.allFinite(),
        "channel entries must be finite");
}

PhaseVector PhaseVector::ones(Eigen::Index n) {
  check(n >= 1, "phase vector needs at least one element");
  return PhaseVector(CVector::Ones(n));
}

PhaseVector PhaseVector::from_angles(const Eigen::VectorXd& theta) {
  check(theta.size() >= 1, "phase vector needs at least one element");
  CVector q(theta.size());
  for (Eigen::Index i = 0; i < theta.size(); ++i)
    q[i] = std::polar(1.0, theta[i]);
  return PhaseVector(std::move(q));
}

PhaseVector PhaseVector::unit(const CVector& q) {
  check(q.size() >= 1, "phase vector needs at least one element");
  CVector out(q.size());
  for (Eigen::Index i = 0; i < q.size(); ++i) {
    const double mag = std::abs(q[i]);
    if (!(mag > 0.0) || !std::isfinite(mag))
      throw std::invalid_argument("phase coefficient " + std::to_string(i) +
                                  " cannot be normalized onto the circle");
    out[i] = q[i] / mag;
  }
  return PhaseVector(std::move(out));
}

Eigen::VectorXd PhaseVector::angles() const {
  Eigen::VectorXd theta(q_.size());
  for (Eigen::Index i = 0; i < q_.size(); ++i) theta[i] = std::arg(q_[i]);
  return theta;
}

Beamformer Beamformer::make(const CVector& v, double p) {
  check(v.size() >= 1, "beamformer needs at least one element");
  check(p > 0.0 && std::isfinite(p), "transmit power must be positive");
  const double norm = v.norm();
  if (!(norm > 0.0) || !std::isfinite(norm))
    throw std::invalid_argument("beamformer direction cannot be zero");
  return Beamformer{v / norm, p};
}

void NoiseModel::validate() const {
  check(bandwidth_hz > 0.0, "bandwidth must be positive");
  check(gain_alice_bob >= 0.0 && gain_alice_ris >= 0.0 && gain_ris_bob >= 0.0,
        "link gains must be nonnegative");
}

}  // namespace rissop
