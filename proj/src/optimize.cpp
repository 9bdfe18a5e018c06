#include "rissop/optimize.hpp"

#include <cmath>
#include <stdexcept>

#include "rissop/analytics.hpp"
#include "rissop/model.hpp"
#include "rissop/rng.hpp"

namespace rissop {

namespace {

// Rotates v so its first significant component is positive real; eigenvector
// returns become reproducible across runs and libraries.
CVector canonical_phase(CVector v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > 1e-8) {
      const Complex rot = std::conj(v[i]) / std::abs(v[i]);
      return rot * v;
    }
  }
  return v;
}

CVector top_eigenvector(const CMatrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(
      0.5 * (hermitian + hermitian.adjoint()));
  if (es.info() != Eigen::Success)
    throw std::runtime_error("Hermitian eigendecomposition failed");
  return canonical_phase(es.eigenvectors().col(hermitian.rows() - 1));
}

// Sigma = G_r diag(H b), the RIS-to-Bob response per element.
CMatrix ris_response(const ChannelSet& ch, const Beamformer& bf) {
  return ch.g_r * CVector(ch.h_ris * bf.b).asDiagonal();
}

struct PhaseQuadratic {
  CMatrix r;        // Sigma^H Sigma
  CVector d;        // alpha Sigma^H H_b b
  double constant;  // alpha^2 |H_b b|^2 + t
  double k;         // c / (beta^2 + |H b|^2)

  double value(const CVector& q) const {
    const double quad = (q.adjoint() * r * q)(0).real();
    const double cross = 2.0 * (d.adjoint() * q)(0).real();
    return -k * (quad + cross + constant);
  }
  CVector egrad(const CVector& q) const { return -2.0 * k * (r * q + d); }
};

PhaseQuadratic make_phase_quadratic(const SystemConfig& cfg,
                                    const ChannelSet& ch,
                                    const Beamformer& bf) {
  const CMatrix sig = ris_response(ch, bf);
  const double denom = cfg.beta * cfg.beta + (ch.h_ris * bf.b).squaredNorm();
  if (!(denom > 0.0))
    throw std::domain_error(
        "wiretap-gain channel is identically zero (beta = 0 and H*b = 0)");
  const double c = cfg.sigma_e2 / (cfg.sigma2 * std::exp2(cfg.r_s));
  const double t = cfg.sigma2 * (1.0 - std::exp2(cfg.r_s)) / cfg.rho;
  PhaseQuadratic pq;
  pq.r = sig.adjoint() * sig;
  pq.d = cfg.alpha * sig.adjoint() * (ch.h_b * bf.b);
  pq.constant = cfg.alpha * cfg.alpha * (ch.h_b * bf.b).squaredNorm() + t;
  pq.k = c / denom;
  return pq;
}

}  // namespace

double phase_objective(const SystemConfig& cfg, const ChannelSet& ch,
                       const Beamformer& bf, const CVector& q) {
  return make_phase_quadratic(cfg, ch, bf).value(q);
}

CVector phase_euclidean_gradient(const SystemConfig& cfg, const ChannelSet& ch,
                                 const Beamformer& bf, const CVector& q) {
  return make_phase_quadratic(cfg, ch, bf).egrad(q);
}

CMatrix sdr_lift_matrix(const SystemConfig& cfg, const ChannelSet& ch,
                        const Beamformer& bf) {
  const CMatrix sig = ris_response(ch, bf);
  const Eigen::Index n = cfg.n_s + 1;
  CMatrix w = CMatrix::Zero(n, n);
  w.topLeftCorner(cfg.n_s, cfg.n_s) = sig.adjoint() * sig;
  const CVector cross = cfg.alpha * sig.adjoint() * (ch.h_b * bf.b);
  w.topRightCorner(cfg.n_s, 1) = cross;
  w.bottomLeftCorner(1, cfg.n_s) = cross.adjoint();
  return 0.5 * (w + w.adjoint()).eval();
}

SubproblemMatrices make_subproblem(const SystemConfig& cfg,
                                   const ChannelSet& ch,
                                   const PhaseVector& phase) {
  const CMatrix m = effective_main_channel(cfg, ch, phase);
  SubproblemMatrices sub;
  sub.a1 = m.adjoint() * m;
  sub.a1 = 0.5 * (sub.a1 + sub.a1.adjoint()).eval();
  sub.a2 = ch.h_ris.adjoint() * ch.h_ris;
  sub.a2 = 0.5 * (sub.a2 + sub.a2.adjoint()).eval();
  if (cfg.n_r == 1) sub.a3 = sub.a1;
  sub.c = cfg.sigma_e2 / (cfg.sigma2 * std::exp2(cfg.r_s));
  sub.t = cfg.sigma2 * (1.0 - std::exp2(cfg.r_s)) / cfg.rho;
  return sub;
}

Beamformer optimal_beamformer(const SubproblemMatrices& sub, double beta,
                              double rho) {
  const Eigen::Index n = sub.a1.rows();
  if (n < 1 || sub.a2.rows() != n)
    throw std::invalid_argument("subproblem matrices must be square and match");

  CMatrix denom = sub.a2 + beta * beta * CMatrix::Identity(n, n);
  Eigen::LLT<CMatrix> llt(denom);
  if (llt.info() != Eigen::Success) {
    // Singular denominator (beta = 0 with a rank-deficient a2): lift it just
    // above the numerical noise floor.
    const double ridge =
        1e-10 * (1.0 + sub.a2.trace().real() / static_cast<double>(n));
    denom += ridge * CMatrix::Identity(n, n);
    llt.compute(denom);
    if (llt.info() != Eigen::Success)
      throw std::runtime_error(
          "beamformer pencil denominator is singular even after the ridge");
  }

  // Reduce the pencil to a standard Hermitian problem: with a2+beta^2 I =
  // L L^H and y = L^H b, the quotient becomes y^H L^{-1}(a1+tI)L^{-H} y / |y|^2.
  const CMatrix numer =
      sub.a1 + sub.t * CMatrix::Identity(n, n);
  const CMatrix l_inv_a = llt.matrixL().solve(numer);
  const CMatrix reduced =
      llt.matrixL().solve(l_inv_a.adjoint()).adjoint();
  const CVector y = top_eigenvector(reduced);
  CVector b = llt.matrixU().solve(y);
  const double norm = b.norm();
  if (!(norm > 0.0) || !std::isfinite(norm))
    throw std::runtime_error("generalized eigenvector collapsed to zero");
  return Beamformer{canonical_phase(b / norm), rho};
}

PhaseOptResult manifold_phase_opt(const SystemConfig& cfg,
                                  const ChannelSet& ch, const Beamformer& bf,
                                  const PhaseVector& q0,
                                  const CgOptions& opt) {
  cfg.validate();
  ch.validate(cfg);
  if (q0.size() != cfg.n_s)
    throw std::invalid_argument("phase vector length must equal n_s");
  if (bf.b.size() != cfg.n_t)
    throw std::invalid_argument("beamformer length must equal n_t");

  const CMatrix sig = ris_response(ch, bf);
  const double sig_norm = sig.norm();
  const double direct_norm = (ch.h_b * bf.b).norm();
  if (sig_norm == 0.0 && (cfg.alpha == 0.0 || direct_norm == 0.0)) {
    // Constant objective; nothing to move.
    return PhaseOptResult{q0, 0.0, {}, 0, true};
  }

  const PhaseQuadratic pq = make_phase_quadratic(cfg, ch, bf);
  if (pq.r.norm() == 0.0 && pq.d.norm() == 0.0)
    return PhaseOptResult{q0, pq.value(q0.coeffs()), {}, 0, true};

  CgOptions cg = opt;
  cg.initial_step = 1.0 / (2.0 * pq.k * pq.r.norm() + 1.0);
  const CgResult res = minimize_unit_rows(
      [&](const CMatrix& v) { return pq.value(v.col(0)); },
      [&](const CMatrix& v) { return CMatrix(pq.egrad(v.col(0))); },
      q0.coeffs(), cg);

  PhaseOptResult out{PhaseVector::unit(res.point.col(0)), res.value, res.trace,
                     res.iterations, res.converged};
  return out;
}

SdrResult sdr_phase_opt(const SystemConfig& cfg, const ChannelSet& ch,
                        const Beamformer& bf, const CgOptions& opt,
                        std::uint64_t seed) {
  cfg.validate();
  ch.validate(cfg);
  const Eigen::Index n = cfg.n_s + 1;
  const CMatrix w = sdr_lift_matrix(cfg, ch, bf);

  // Factor rank from the constraint count, enough to make second-order
  // critical points of the factorized problem globally optimal.
  const Eigen::Index rank =
      static_cast<Eigen::Index>(std::ceil(std::sqrt(2.0 * n))) + 1;

  CgOptions cg = opt;
  cg.initial_step = 1.0 / (2.0 * w.norm() + 1.0);
  const auto objective = [&](const CMatrix& v) {
    return -(v.adjoint() * w * v).trace().real();
  };
  const auto egrad = [&](const CMatrix& v) { return CMatrix(-2.0 * w * v); };

  CgResult best;
  bool have_best = false;
  for (int restart = 0; restart < 3; ++restart) {
    const CMatrix v0 =
        normalize_rows(sample_rayleigh(n, rank, seed, restart));
    CgResult res = minimize_unit_rows(objective, egrad, v0, cg);
    if (!have_best || res.value < best.value) {
      best = std::move(res);
      have_best = true;
    }
  }

  const CMatrix q_lifted = best.point * best.point.adjoint();
  CVector lead = top_eigenvector(q_lifted);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double mag = std::abs(lead[i]);
    lead[i] = mag > 1e-12 ? lead[i] / mag : Complex(1.0, 0.0);
  }
  // Fix the lifting's global phase so the auxiliary slot is exactly one,
  // then drop it.
  lead *= std::conj(lead[n - 1]);
  SdrResult out{PhaseVector::unit(lead.head(cfg.n_s)), -best.value,
                std::move(best.point), best.stagnated, best.iterations};
  return out;
}

PhaseVector closed_form_phase_single_bob(const ChannelSet& ch,
                                         const Beamformer& bf, double alpha) {
  if (ch.g_r.rows() != 1 || ch.h_b.rows() != 1)
    throw std::invalid_argument("closed-form phases require n_r == 1");
  if (ch.h_ris.cols() != bf.b.size())
    throw std::invalid_argument("beamformer length must match h_ris");

  const CVector m = ch.h_ris * bf.b;
  const Complex direct = (ch.h_b.row(0) * bf.b)(0);
  const double theta0 =
      (alpha == 0.0 || std::abs(direct) == 0.0) ? 0.0 : std::arg(direct);
  Eigen::VectorXd theta(ch.g_r.cols());
  for (Eigen::Index i = 0; i < theta.size(); ++i)
    theta[i] = theta0 - std::arg(ch.g_r(0, i)) - std::arg(m[i]);
  return PhaseVector::from_angles(theta);
}

namespace {

double threshold_ratio(const SubproblemMatrices& sub, double beta,
                       const CVector& b) {
  const double numer = (b.adjoint() * sub.a1 * b)(0).real() + sub.t;
  const double denom = (b.adjoint() * sub.a2 * b)(0).real() + beta * beta;
  return sub.c * numer / denom;
}

}  // namespace

AOReport alternating_optimize(const SystemConfig& cfg, const ChannelSet& ch,
                              PhaseSolverKind solver, std::uint64_t seed,
                              const AOOptions& opt) {
  cfg.validate();
  ch.validate(cfg);
  if (opt.iter_max < 1) throw std::invalid_argument("iter_max must be >= 1");
  if (!(opt.xi > 0.0)) throw std::invalid_argument("xi must be positive");
  if (solver == PhaseSolverKind::kClosedForm && cfg.n_r != 1)
    throw std::invalid_argument(
        "closed-form phase solver requires n_r == 1");
  if (opt.warm_start && opt.warm_start->size() != cfg.n_s)
    throw std::invalid_argument("warm-start phase length must equal n_s");

  PhaseVector q = opt.warm_start ? *opt.warm_start : PhaseVector::ones(cfg.n_s);
  Beamformer b =
      cfg.n_t == 1
          ? Beamformer{CVector::Ones(1), cfg.rho}
          : Beamformer::make(random_unit_vector(cfg.n_t, seed, 0), cfg.rho);

  const auto solve_phase = [&](const PhaseVector& q_in, int iter) {
    switch (solver) {
      case PhaseSolverKind::kSdr:
        return sdr_phase_opt(cfg, ch, b, opt.cg, mix_seed(seed, 1, iter)).q;
      case PhaseSolverKind::kManifold:
        return manifold_phase_opt(cfg, ch, b, q_in, opt.cg).q;
      case PhaseSolverKind::kClosedForm:
        return closed_form_phase_single_bob(ch, b, cfg.alpha);
    }
    throw std::logic_error("unknown phase solver");
  };

  std::vector<AOStep> trace;
  bool converged = false;
  PhaseVector best_q = q;
  Beamformer best_b = b;
  double best_p = 2.0;
  PhaseVector last_q = q;
  Beamformer last_b = b;

  const int iter_max = cfg.n_t == 1 ? 1 : opt.iter_max;
  for (int iter = 1; iter <= iter_max; ++iter) {
    q = solve_phase(q, iter);
    const SubproblemMatrices sub = make_subproblem(cfg, ch, q);
    const double p_out = sop_theory(cfg, ch, q, b);
    trace.push_back({iter, p_out, threshold_ratio(sub, cfg.beta, b.b)});
    last_q = q;
    last_b = b;  // the beamformer that produced this recorded outage
    if (p_out < best_p) {
      best_p = p_out;
      best_q = q;
      best_b = b;
    }
    if (cfg.n_t == 1) {
      converged = true;
      break;
    }
    if (trace.size() >= 2) {
      const double prev = trace[trace.size() - 2].p_out;
      if (prev - p_out <= std::max(opt.xi, opt.xi_rel * prev)) {
        converged = true;
        break;
      }
    }
    b = optimal_beamformer(sub, cfg.beta, cfg.rho);
  }

  // The relaxed path descends monotonically so its last iterate is its best;
  // the manifold path has no such guarantee and reports the best seen.
  const bool report_best = solver == PhaseSolverKind::kManifold;
  AOReport report{std::move(trace),
                  report_best ? best_q : last_q,
                  report_best ? best_b : last_b,
                  converged,
                  0};
  report.iterations_used = static_cast<int>(report.trace.size());
  return report;
}

Beamformer mrt_baseline(const SystemConfig& cfg, const ChannelSet& ch,
                        bool with_ris,
                        const std::optional<PhaseVector>& phase) {
  cfg.validate();
  ch.validate(cfg);
  CMatrix m;
  if (with_ris) {
    if (!phase)
      throw std::invalid_argument("RIS-combined MRT needs a phase vector");
    m = effective_main_channel(cfg, ch, *phase);
  } else {
    m = ch.h_b;
  }
  if (m.norm() == 0.0)
    throw std::domain_error("MRT is undefined for a zero channel");
  CVector b = cfg.n_r == 1 ? CVector(m.row(0).adjoint())
                           : top_eigenvector(m.adjoint() * m);
  b /= b.norm();
  return Beamformer{canonical_phase(b), cfg.rho};
}

MrtPsResult mrt_ps_optimize(const SystemConfig& cfg, const ChannelSet& ch,
                            const AOOptions& opt) {
  cfg.validate();
  ch.validate(cfg);
  PhaseVector q = opt.warm_start ? *opt.warm_start : PhaseVector::ones(cfg.n_s);
  Beamformer b = mrt_baseline(cfg, ch, true, q);
  double capacity = main_capacity(cfg, ch, q, b);
  int iterations = 0;
  for (int iter = 1; iter <= opt.iter_max; ++iter) {
    q = manifold_phase_opt(cfg, ch, b, q, opt.cg).q;
    b = mrt_baseline(cfg, ch, true, q);
    const double next = main_capacity(cfg, ch, q, b);
    iterations = iter;
    if (next - capacity <= 1e-9 * std::max(1.0, capacity)) {
      capacity = next;
      break;
    }
    capacity = next;
  }
  return MrtPsResult{q, b, iterations};
}

}  // namespace rissop
