#include "rissop/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>
#include <sstream>

#include "rissop/analytics.hpp"
#include "rissop/model.hpp"
#include "rissop/montecarlo.hpp"
#include "rissop/optimize.hpp"
#include "rissop/oracles.hpp"
#include "rissop/rng.hpp"

namespace rissop {

namespace {

struct Ctx {
  std::uint64_t seed;
  int threads;
};

double db_to_lin(double db) { return std::pow(10.0, db / 10.0); }

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

SystemConfig fig2_config(int n_e, int n_r, double r_s, double snr_db) {
  SystemConfig cfg;
  cfg.n_t = 10;
  cfg.n_s = 16;
  cfg.n_e = n_e;
  cfg.n_r = n_r;
  cfg.alpha = cfg.beta = 0.8;
  cfg.sigma2 = cfg.sigma_e2 = 1.0;
  cfg.rho = db_to_lin(snr_db);
  cfg.r_s = r_s;
  return cfg;
}

const std::pair<int, int> kFig2Antennas[] = {{2, 4}, {4, 4}, {2, 1}};

CriterionResult theory_vs_monte_carlo(const Ctx& ctx) {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  int points = 0;
  for (std::size_t c = 0; c < 3; ++c) {
    const auto [n_e, n_r] = kFig2Antennas[c];
    SystemConfig cfg = fig2_config(n_e, n_r, 1.0, 9.0);
    const ChannelSet ch =
        generate_channels(cfg, mix_seed(ctx.seed, 10, n_e, n_r));
    const PhaseVector phase =
        random_phase_vector(cfg.n_s, mix_seed(ctx.seed, 11, n_e, n_r), 0);
    const Beamformer bf = mrt_baseline(cfg, ch, true, phase);
    for (int step = 0; step < 8; ++step) {
      cfg.r_s = 0.5 + 0.5 * step;
      const double theo = sop_theory(cfg, ch, phase, bf);
      const McEstimate est =
          empirical_sop(cfg, ch, phase, bf, 100000,
                        mix_seed(ctx.seed, 12, c, step), ctx.threads);
      worst = std::max(worst, std::abs(theo - est.p_hat));
      ++points;
    }
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  CriterionResult r;
  r.name = "theory-vs-monte-carlo";
  r.measured = worst;
  r.tolerance = 0.015;
  r.passed = worst <= r.tolerance && secs <= 120.0;
  r.detail = std::to_string(points) + " grid points, 1e5 trials each, " +
             fmt(secs) + " s (budget 120 s)";
  return r;
}

CriterionResult outage_trends(const Ctx& ctx) {
  double worst = -1.0;
  for (std::size_t c = 0; c < 3; ++c) {
    const auto [n_e, n_r] = kFig2Antennas[c];
    SystemConfig cfg = fig2_config(n_e, n_r, 1.0, 9.0);
    const ChannelSet ch =
        generate_channels(cfg, mix_seed(ctx.seed, 10, n_e, n_r));
    const PhaseVector phase =
        random_phase_vector(cfg.n_s, mix_seed(ctx.seed, 11, n_e, n_r), 0);
    const Beamformer bf = mrt_baseline(cfg, ch, true, phase);

    double prev = -1.0;
    for (int step = 0; step < 8; ++step) {
      cfg.r_s = 0.5 + 0.5 * step;
      const double v = sop_theory(cfg, ch, phase, bf);
      if (step > 0) worst = std::max(worst, prev - v);  // must not decrease
      prev = v;
    }
    cfg.r_s = 3.0;
    prev = 2.0;
    for (int snr = 0; snr <= 21; snr += 3) {
      cfg.rho = db_to_lin(snr);
      const Beamformer scaled{bf.b, cfg.rho};
      const double v = sop_theory(cfg, ch, phase, scaled);
      if (snr > 0) worst = std::max(worst, v - prev);  // must not increase
      prev = v;
    }
  }
  CriterionResult r;
  r.name = "monotone-trends";
  r.measured = worst;
  r.tolerance = 1e-12;
  r.passed = worst <= r.tolerance;
  return r;
}

CriterionResult high_snr_bound(const Ctx& ctx) {
  Xoshiro256pp gen(mix_seed(ctx.seed, 30), 0);
  double max_diff = 0.0;
  double min_diff = 1.0;
  for (int i = 0; i < 20; ++i) {
    SystemConfig cfg;
    cfg.n_t = 1 + static_cast<int>(gen.next() % 4);
    cfg.n_r = 1 + static_cast<int>(gen.next() % 4);
    cfg.n_e = 1 + static_cast<int>(gen.next() % 4);
    cfg.n_s = 1 + static_cast<int>(gen.next() % 8);
    cfg.alpha = gen.uniform01();
    cfg.beta = 0.5 + 0.5 * gen.uniform01();
    cfg.sigma2 = cfg.sigma_e2 = 1.0;
    cfg.rho = db_to_lin(40.0);
    cfg.r_s = 0.5 + 3.5 * gen.uniform01();
    const ChannelSet ch = generate_channels(cfg, mix_seed(ctx.seed, 31, i));
    const PhaseVector phase =
        random_phase_vector(cfg.n_s, mix_seed(ctx.seed, 32, i), 0);
    const Beamformer bf = Beamformer::make(
        random_unit_vector(cfg.n_t, mix_seed(ctx.seed, 33, i), 0), cfg.rho);
    const double sop = sop_theory(cfg, ch, phase, bf);
    const double bound = sop_high_snr_bound(cfg, ch, phase, bf);
    max_diff = std::max(max_diff, sop - bound);
    min_diff = std::min(min_diff, sop - bound);
  }
  CriterionResult r;
  r.name = "high-snr-bound";
  r.measured = max_diff;
  r.tolerance = 1e-3;
  r.passed = max_diff <= 1e-3 && min_diff >= -1e-12;
  r.detail = "min gap " + fmt(min_diff);
  return r;
}

CriterionResult gain_law_exactness(const Ctx& ctx) {
  Xoshiro256pp gen(mix_seed(ctx.seed, 40), 0);
  double worst_ratio = 0.0;
  std::string worst_part = "none";
  for (int i = 0; i < 10; ++i) {
    const int m = 1 + static_cast<int>(gen.next() % 4);
    const int n = static_cast<int>(gen.next() % 9);
    double beta = gen.uniform01();
    if (n == 0) beta = 0.4 + 0.6 * gen.uniform01();
    CVector u(n);
    Xoshiro256pp ugen(mix_seed(ctx.seed, 41, i), 0);
    for (int j = 0; j < n; ++j) u[j] = ugen.cnormal();

    const double ks =
        empirical_cdf_distance(beta, m, u, 100000, mix_seed(ctx.seed, 42, i));
    const auto [mean, var] = empirical_gain_moments(
        beta, m, u, 1000000, mix_seed(ctx.seed, 43, i), ctx.threads);
    const double w = beta * beta + u.squaredNorm();
    const double mean_rel = std::abs(mean - m * w) / (m * w);
    const double var_rel = std::abs(var - m * w * w) / (m * w * w);

    const double ratios[3] = {ks / 0.01, mean_rel / 0.01, var_rel / 0.03};
    const char* names[3] = {"ks", "mean", "var"};
    for (int k = 0; k < 3; ++k)
      if (ratios[k] > worst_ratio) {
        worst_ratio = ratios[k];
        worst_part = names[k];
      }
  }
  CriterionResult r;
  r.name = "gain-law-exactness";
  r.measured = worst_ratio;
  r.tolerance = 1.0;
  r.passed = worst_ratio <= 1.0;
  r.detail = "worst part: " + worst_part +
             " (KS tol 0.01, mean tol 1%, var tol 3%)";
  return r;
}

CriterionResult ao_convergence(const Ctx& ctx) {
  SystemConfig cfg;
  cfg.n_t = 10;
  cfg.n_e = 2;
  cfg.n_s = 32;
  cfg.alpha = cfg.beta = 0.8;
  cfg.sigma2 = cfg.sigma_e2 = 1.0;
  cfg.rho = db_to_lin(7.0);
  cfg.r_s = 3.0;

  int max_iters = 0;
  bool all_converged = true;
  double sdr_worst_rise = 0.0;

  cfg.n_r = 1;
  {
    const ChannelSet ch = generate_channels(cfg, mix_seed(ctx.seed, 50));
    const AOReport rep = alternating_optimize(
        cfg, ch, PhaseSolverKind::kClosedForm, mix_seed(ctx.seed, 51));
    all_converged = all_converged && rep.converged;
    max_iters = std::max(max_iters, rep.iterations_used);
  }
  cfg.n_r = 3;
  const ChannelSet ch = generate_channels(cfg, mix_seed(ctx.seed, 52));
  {
    const AOReport rep = alternating_optimize(
        cfg, ch, PhaseSolverKind::kManifold, mix_seed(ctx.seed, 53));
    all_converged = all_converged && rep.converged;
    max_iters = std::max(max_iters, rep.iterations_used);
  }
  {
    const AOReport rep = alternating_optimize(cfg, ch, PhaseSolverKind::kSdr,
                                              mix_seed(ctx.seed, 54));
    all_converged = all_converged && rep.converged;
    max_iters = std::max(max_iters, rep.iterations_used);
    for (std::size_t i = 1; i < rep.trace.size(); ++i)
      sdr_worst_rise = std::max(
          sdr_worst_rise, rep.trace[i].p_out - rep.trace[i - 1].p_out);
  }

  CriterionResult r;
  r.name = "ao-convergence";
  r.measured = max_iters;
  r.tolerance = 10;
  r.passed = all_converged && max_iters <= 10 && sdr_worst_rise <= 1e-5;
  r.detail = std::string(all_converged ? "all converged" : "NOT converged") +
             ", worst SDR rise " + fmt(sdr_worst_rise) + " (xi 1e-5)";
  return r;
}

CriterionResult optimizers_beat_baselines(const Ctx& ctx) {
  SystemConfig base;
  base.n_t = 10;
  base.n_e = 2;
  base.n_r = 3;
  base.n_s = 32;
  base.alpha = base.beta = 0.8;
  base.sigma2 = base.sigma_e2 = 1.0;
  base.r_s = 4.0;

  const int snrs[] = {0, 3, 6, 9, 12, 15};
  constexpr int kSeeds = 10;
  double man_avg[6] = {}, sdr_avg[6] = {}, bare_avg[6] = {}, rand_avg[6] = {};

  for (int k = 0; k < kSeeds; ++k) {
    SystemConfig cfg = base;
    const ChannelSet ch = generate_channels(cfg, mix_seed(ctx.seed, 60, k));
    ChannelSet bare = ch;
    bare.h_ris.setZero();
    bare.g_r.setZero();
    const PhaseVector rand_phase =
        random_phase_vector(cfg.n_s, mix_seed(ctx.seed, 61, k), 0);
    for (int i = 0; i < 6; ++i) {
      cfg.rho = db_to_lin(snrs[i]);
      const AOReport man = alternating_optimize(
          cfg, ch, PhaseSolverKind::kManifold, mix_seed(ctx.seed, 62, k, i));
      const AOReport sdr = alternating_optimize(
          cfg, ch, PhaseSolverKind::kSdr, mix_seed(ctx.seed, 63, k, i));
      const Beamformer b_bare = mrt_baseline(cfg, bare, false);
      const Beamformer b_rand = mrt_baseline(cfg, ch, true, rand_phase);
      man_avg[i] += sop_theory(cfg, ch, man.final_q, man.final_b) / kSeeds;
      sdr_avg[i] += sop_theory(cfg, ch, sdr.final_q, sdr.final_b) / kSeeds;
      bare_avg[i] +=
          sop_theory(cfg, bare, PhaseVector::ones(cfg.n_s), b_bare) / kSeeds;
      rand_avg[i] += sop_theory(cfg, ch, rand_phase, b_rand) / kSeeds;
    }
  }

  double worst = -1.0;
  for (int i = 0; i < 6; ++i) {
    const double baseline = std::min(bare_avg[i], rand_avg[i]);
    worst = std::max(worst, man_avg[i] - baseline);
    worst = std::max(worst, sdr_avg[i] - baseline);
  }
  CriterionResult r;
  r.name = "optimizers-beat-baselines";
  r.measured = worst;
  r.tolerance = 1e-12;
  r.passed = worst <= r.tolerance;
  r.detail = "worst (AO - best baseline) average gap over the SNR grid";
  return r;
}

CriterionResult eavesdropper_dominance(const Ctx& ctx) {
  SystemConfig cfg;
  cfg.n_t = 10;
  cfg.n_r = 1;
  cfg.n_s = 32;
  cfg.alpha = cfg.beta = 0.8;
  cfg.sigma2 = cfg.sigma_e2 = 1.0;
  cfg.rho = db_to_lin(9.0);
  cfg.r_s = 3.0;

  const ChannelSet ch = generate_channels(cfg, mix_seed(ctx.seed, 70));
  double prev = -1.0;
  double worst_drop = -1.0;
  double min_tail = 1.0;
  for (int n_e = 1; n_e <= 12; ++n_e) {
    cfg.n_e = n_e;
    const AOReport rep = alternating_optimize(
        cfg, ch, PhaseSolverKind::kClosedForm, mix_seed(ctx.seed, 71));
    const double sop = sop_theory(cfg, ch, rep.final_q, rep.final_b);
    if (n_e > 1) worst_drop = std::max(worst_drop, prev - sop);
    if (n_e > cfg.n_t) min_tail = std::min(min_tail, sop);
    prev = sop;
  }
  CriterionResult r;
  r.name = "eavesdropper-dominance";
  r.measured = min_tail;
  r.tolerance = 0.99;
  r.passed = worst_drop <= 1e-12 && min_tail >= 0.99;
  r.detail = "worst monotonicity violation " + fmt(worst_drop);
  return r;
}

CriterionResult subproblem_oracles(const Ctx& ctx) {
  double worst_ratio = 0.0;
  std::string detail;

  {  // (a) generalized-eigenvector beamformer vs random unit vectors
    SystemConfig cfg;
    cfg.n_t = 3;
    cfg.n_r = 2;
    cfg.n_e = 2;
    cfg.n_s = 4;
    cfg.alpha = 0.8;
    cfg.beta = 0.7;
    cfg.rho = 5.0;
    cfg.r_s = 1.0;
    const ChannelSet ch = generate_channels(cfg, mix_seed(ctx.seed, 80));
    const PhaseVector phase =
        random_phase_vector(cfg.n_s, mix_seed(ctx.seed, 81), 0);
    const SubproblemMatrices sub = make_subproblem(cfg, ch, phase);
    const Beamformer best = optimal_beamformer(sub, cfg.beta, cfg.rho);
    const auto ratio = [&](const CVector& b) {
      const double num = (b.adjoint() * sub.a1 * b)(0).real() + sub.t;
      const double den =
          (b.adjoint() * sub.a2 * b)(0).real() + cfg.beta * cfg.beta;
      return num / den;
    };
    const double star = ratio(best.b);
    Xoshiro256pp gen(mix_seed(ctx.seed, 82), 0);
    double margin = 0.0;
    CVector v(cfg.n_t);
    for (int i = 0; i < 100000; ++i) {
      for (int j = 0; j < cfg.n_t; ++j) v[j] = gen.cnormal();
      v /= v.norm();
      margin = std::max(margin, ratio(v) - star);
    }
    worst_ratio = std::max(worst_ratio, margin / 1e-9);
    detail += "beamformer margin " + fmt(margin);
  }

  {  // (b) manifold CG vs exhaustive grid at N_s = 2
    SystemConfig cfg;
    cfg.n_t = 3;
    cfg.n_r = 2;
    cfg.n_e = 2;
    cfg.n_s = 2;
    cfg.alpha = 0.8;
    cfg.beta = 0.8;
    cfg.rho = 4.0;
    cfg.r_s = 1.0;
    const ChannelSet ch = generate_channels(cfg, mix_seed(ctx.seed, 83));
    const Beamformer bf = Beamformer::make(
        random_unit_vector(cfg.n_t, mix_seed(ctx.seed, 84), 0), cfg.rho);
    const PhaseOptResult res =
        manifold_phase_opt(cfg, ch, bf, PhaseVector::ones(cfg.n_s));
    const double grid = torus_best(
        2, 4096,
        [&](const CVector& q) { return phase_objective(cfg, ch, bf, q); },
        false);
    const double gap = res.objective - grid;
    worst_ratio = std::max(worst_ratio, gap / 1e-4);
    detail += ", manifold-vs-grid gap " + fmt(gap);
  }

  {  // (c) closed-form alignment identity
    Xoshiro256pp gen(mix_seed(ctx.seed, 85), 0);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      SystemConfig cfg;
      cfg.n_t = 1 + static_cast<int>(gen.next() % 6);
      cfg.n_r = 1;
      cfg.n_e = 1;
      cfg.n_s = 1 + static_cast<int>(gen.next() % 8);
      cfg.alpha = gen.uniform01();
      cfg.beta = 0.8;
      const ChannelSet ch = generate_channels(cfg, mix_seed(ctx.seed, 86, i));
      const Beamformer bf = Beamformer::make(
          random_unit_vector(cfg.n_t, mix_seed(ctx.seed, 87, i), 0), 1.0);
      const PhaseVector q = closed_form_phase_single_bob(ch, bf, cfg.alpha);
      const CMatrix m = effective_main_channel(cfg, ch, q);
      const double achieved = std::abs((m * bf.b)(0));
      const CVector hb = ch.h_ris * bf.b;
      double target = cfg.alpha * std::abs((ch.h_b.row(0) * bf.b)(0));
      for (int n = 0; n < cfg.n_s; ++n)
        target += std::abs(ch.g_r(0, n)) * std::abs(hb[n]);
      worst = std::max(worst, std::abs(achieved - target));
    }
    worst_ratio = std::max(worst_ratio, worst / 1e-10);
    detail += ", alignment error " + fmt(worst);
  }

  {  // (d) relaxation sandwich at N_s = 2 and 3
    for (int n_s = 2; n_s <= 3; ++n_s) {
      SystemConfig cfg;
      cfg.n_t = 2;
      cfg.n_r = 2;
      cfg.n_e = 2;
      cfg.n_s = n_s;
      cfg.alpha = 0.9;
      cfg.beta = 0.6;
      cfg.rho = 4.0;
      cfg.r_s = 1.0;
      const ChannelSet ch =
          generate_channels(cfg, mix_seed(ctx.seed, 88, n_s));
      const Beamformer bf = Beamformer::make(
          random_unit_vector(cfg.n_t, mix_seed(ctx.seed, 89, n_s), 0),
          cfg.rho);
      const SdrResult sdr = sdr_phase_opt(cfg, ch, bf);
      const CMatrix w = sdr_lift_matrix(cfg, ch, bf);
      const auto lifted = [&](const CVector& q) {
        CVector qh(n_s + 1);
        qh.head(n_s) = q;
        qh[n_s] = 1.0;
        return (qh.adjoint() * w * qh)(0).real();
      };
      const double grid =
          torus_best(n_s, n_s == 2 ? 4096 : 256, lifted, true);
      CVector q_ext(n_s);
      q_ext = sdr.q.coeffs();
      const double extract = lifted(q_ext);
      const double slack = 1e-9 * (1.0 + std::abs(sdr.sdp_value));
      const double viol = std::max(grid - sdr.sdp_value - slack,
                                   extract - sdr.sdp_value - slack);
      worst_ratio = std::max(worst_ratio, viol <= 0.0 ? 0.0 : 1.0 + viol);
      detail += ", sandwich n_s=" + std::to_string(n_s) + " gap " +
                fmt(sdr.sdp_value - std::max(grid, extract));
    }
  }

  CriterionResult r;
  r.name = "subproblem-oracles";
  r.measured = worst_ratio;
  r.tolerance = 1.0;
  r.passed = worst_ratio <= 1.0;
  r.detail = detail;
  return r;
}

CriterionResult numerical_kernels(const Ctx& ctx) {
  double worst_gamma = 0.0;
  const int ms[] = {1, 2, 3, 5, 8, 12, 16, 20};
  const double zs[] = {1e-3, 0.5, 1, 2, 5, 10, 20, 50, 75, 100};
  for (int m : ms)
    for (double z : zs) {
      const double series = reg_upper_gamma(m, z);
      const double quad = quadrature_reg_upper_gamma(m, z);
      const double rel =
          std::abs(series - quad) / std::max(quad, 1e-300);
      worst_gamma = std::max(worst_gamma, rel);
    }

  double worst_fd = 0.0;
  for (int i = 0; i < 5; ++i) {
    SystemConfig cfg;
    cfg.n_t = 3;
    cfg.n_r = 2;
    cfg.n_e = 2;
    cfg.n_s = 4;
    cfg.alpha = 0.7;
    cfg.beta = 0.6;
    cfg.rho = 3.0;
    cfg.r_s = 1.5;
    const ChannelSet ch = generate_channels(cfg, mix_seed(ctx.seed, 90, i));
    const Beamformer bf = Beamformer::make(
        random_unit_vector(cfg.n_t, mix_seed(ctx.seed, 91, i), 0), cfg.rho);
    CVector q = random_phase_vector(cfg.n_s, mix_seed(ctx.seed, 92, i), 0)
                    .coeffs();
    const CVector g = phase_euclidean_gradient(cfg, ch, bf, q);
    const double h = 1e-6;
    CVector g_num(cfg.n_s);
    for (int k = 0; k < cfg.n_s; ++k) {
      CVector qp = q, qm = q;
      qp[k] += h;
      qm[k] -= h;
      const double dre = (phase_objective(cfg, ch, bf, qp) -
                          phase_objective(cfg, ch, bf, qm)) /
                         (2 * h);
      qp = q;
      qm = q;
      qp[k] += Complex(0, h);
      qm[k] -= Complex(0, h);
      const double dim = (phase_objective(cfg, ch, bf, qp) -
                          phase_objective(cfg, ch, bf, qm)) /
                         (2 * h);
      g_num[k] = Complex(dre, dim);
    }
    worst_fd = std::max(worst_fd, (g_num - g).norm() / g.norm());
  }

  CriterionResult r;
  r.name = "numerical-kernels";
  r.measured = std::max(worst_gamma / 1e-10, worst_fd / 1e-4);
  r.tolerance = 1.0;
  r.passed = r.measured <= 1.0;
  r.detail = "gamma rel " + fmt(worst_gamma) + " (tol 1e-10), gradient rel " +
             fmt(worst_fd) + " (tol 1e-4)";
  return r;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt,
                                            std::ostream* progress) {
  const Ctx ctx{opt.seed, opt.n_threads};
  std::vector<CriterionResult> results;
  const auto push = [&](CriterionResult r) {
    if (progress) {
      (*progress) << (r.passed ? "PASS" : "FAIL") << "  " << r.name
                  << "  measured=" << r.measured
                  << "  tolerance=" << r.tolerance;
      if (!r.detail.empty()) (*progress) << "  (" << r.detail << ")";
      (*progress) << std::endl;
    }
    results.push_back(std::move(r));
  };

  push(theory_vs_monte_carlo(ctx));
  push(outage_trends(ctx));
  push(high_snr_bound(ctx));
  push(gain_law_exactness(ctx));
  push(ao_convergence(ctx));
  push(optimizers_beat_baselines(ctx));
  push(eavesdropper_dominance(ctx));
  push(subproblem_oracles(ctx));
  push(numerical_kernels(ctx));
  return results;
}

bool all_passed(const std::vector<CriterionResult>& results) {
  for (const auto& r : results)
    if (!r.passed) return false;
  return !results.empty();
}

}  // namespace rissop
