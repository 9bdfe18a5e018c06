#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rissop/manifold.hpp"
#include "rissop/types.hpp"

namespace rissop {

/// Quadratic forms of the beamformer subproblem for a fixed phase vector:
/// the outage objective equals c * (b^H a1 b + t) / (b^H a2 b + beta^2).
struct SubproblemMatrices {
  CMatrix a1;  // Gram matrix of the effective main channel
  CMatrix a2;  // H^H H
  CMatrix a3;  // single-Bob form of a1 (filled only when n_r == 1)
  double c = 1.0;   // sigma_e^2 / (sigma^2 2^{r_s})
  double t = 0.0;   // sigma^2 (1 - 2^{r_s}) / rho, nonpositive for r_s > 0
};

SubproblemMatrices make_subproblem(const SystemConfig& cfg,
                                   const ChannelSet& ch,
                                   const PhaseVector& phase);

/// Maximizer of (b^H (a1 + t I) b) / (b^H (a2 + beta^2 I) b) on the unit
/// sphere: the top generalized eigenvector of the pencil, computed through a
/// Cholesky reduction. The returned power is the full budget rho.
Beamformer optimal_beamformer(const SubproblemMatrices& sub, double beta,
                              double rho);

/// Phase-subproblem objective f(q) (the negated, scaled threshold ratio) and
/// its Euclidean gradient, evaluated at an arbitrary complex vector. These
/// are the quantities the manifold solver descends; they are exposed for
/// finite-difference and exhaustive-search checks.
double phase_objective(const SystemConfig& cfg, const ChannelSet& ch,
                       const Beamformer& bf, const CVector& q);
CVector phase_euclidean_gradient(const SystemConfig& cfg, const ChannelSet& ch,
                                 const Beamformer& bf, const CVector& q);

/// Lifted quadratic of the relaxation: the (N_s+1) x (N_s+1) Hermitian W with
/// the RIS Gram block, the direct-link cross terms and a zero corner.
CMatrix sdr_lift_matrix(const SystemConfig& cfg, const ChannelSet& ch,
                        const Beamformer& bf);

struct PhaseOptResult {
  PhaseVector q;
  double objective = 0.0;
  std::vector<double> trace;
  int iterations = 0;
  bool converged = false;
};

/// Riemannian conjugate-gradient descent of the phase objective on the
/// complex circle manifold, started from q0.
PhaseOptResult manifold_phase_opt(const SystemConfig& cfg,
                                  const ChannelSet& ch, const Beamformer& bf,
                                  const PhaseVector& q0,
                                  const CgOptions& opt = {});

struct SdrResult {
  PhaseVector q;          // feasible unit-modulus extraction
  double sdp_value = 0.0; // tr(W Q) at the relaxation optimum
  CMatrix factor;         // V with Q = V V^H, unit-norm rows
  bool stagnated = false;
  int iterations = 0;
};

/// Semidefinite relaxation of the lifted phase problem, solved by a low-rank
/// factorization Q = V V^H with unit-norm rows of V and the same conjugate-
/// gradient engine; the feasible phase vector comes from the leading
/// eigenvector of Q, rotated so the auxiliary slot is one.
SdrResult sdr_phase_opt(const SystemConfig& cfg, const ChannelSet& ch,
                        const Beamformer& bf, const CgOptions& opt = {},
                        std::uint64_t seed = 0x5d5c9e2f8a614b31ULL);

/// Closed-form phase alignment for a single-antenna Bob: rotates every RIS
/// path onto the direct-link phase so the effective channel magnitudes add.
PhaseVector closed_form_phase_single_bob(const ChannelSet& ch,
                                         const Beamformer& bf, double alpha);

enum class PhaseSolverKind { kSdr, kManifold, kClosedForm };

struct AOOptions {
  // Stop once an iteration improves the outage by no more than
  // max(xi, xi_rel * previous value): an absolute floor at the resolution
  // probabilities are used at, plus a relative guard for near-one values.
  double xi = 1e-3;
  double xi_rel = 0.02;
  int iter_max = 50;
  CgOptions cg;
  std::optional<PhaseVector> warm_start;  // initial phases, default all-ones
};

struct AOStep {
  int iteration = 0;
  double p_out = 1.0;
  double objective = 0.0;  // the maximized threshold ratio at this iterate
};

struct AOReport {
  std::vector<AOStep> trace;
  PhaseVector final_q;
  Beamformer final_b;
  bool converged = false;
  int iterations_used = 0;
};

/// Alternates the phase solver and the closed-form beamformer from a seeded
/// random start until the outage improvement drops below xi. With a single
/// transmit antenna one phase pass suffices and no alternation runs. The
/// manifold path reports the best iterate seen; the relaxation path is
/// monotone and reports the last.
AOReport alternating_optimize(const SystemConfig& cfg, const ChannelSet& ch,
                              PhaseSolverKind solver, std::uint64_t seed,
                              const AOOptions& opt = {});

/// Maximal-ratio transmission: the capacity-optimal direction for the direct
/// channel (with_ris == false) or the phase-combined channel (with_ris ==
/// true, phase required).
Beamformer mrt_baseline(const SystemConfig& cfg, const ChannelSet& ch,
                        bool with_ris,
                        const std::optional<PhaseVector>& phase = std::nullopt);

struct MrtPsResult {
  PhaseVector q;
  Beamformer b;
  int iterations = 0;
};

/// Capacity-driven baseline: alternates MRT beamforming with manifold phase
/// alignment of the main channel, ignoring the eavesdropper statistics.
MrtPsResult mrt_ps_optimize(const SystemConfig& cfg, const ChannelSet& ch,
                            const AOOptions& opt = {});

}  // namespace rissop
