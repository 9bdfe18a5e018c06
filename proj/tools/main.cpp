#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "rissop/acceptance.hpp"
#include "rissop/analytics.hpp"
#include "rissop/model.hpp"
#include "rissop/montecarlo.hpp"
#include "rissop/optimize.hpp"
#include "rissop/rng.hpp"
#include "rissop/scenario.hpp"

namespace {

using namespace rissop;

struct PointArgs {
  std::string config_path;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string phase_mode = "ones";
};

struct Point {
  SystemConfig cfg;
  ChannelSet ch;
  PhaseVector phase;
  Beamformer bf;
  std::uint64_t seed;
};

Point make_point(const PointArgs& a) {
  Scenario s = load_scenario(a.config_path);
  const std::uint64_t seed = a.seed_set ? a.seed : s.seed;
  const SystemConfig cfg = s.system;
  ChannelSet ch = generate_channels(cfg, mix_seed(seed, 11), s.noise);
  PhaseVector phase = a.phase_mode == "random"
                          ? random_phase_vector(cfg.n_s, mix_seed(seed, 12), 0)
                          : PhaseVector::ones(cfg.n_s);
  Beamformer bf = mrt_baseline(cfg, ch, true, phase);
  return Point{cfg, std::move(ch), std::move(phase), std::move(bf), seed};
}

void print_point_header(const Point& p) {
  std::printf("n_t=%d n_r=%d n_e=%d n_s=%d alpha=%g beta=%g snr_db=%.4g "
              "r_s=%g seed=%llu\n",
              p.cfg.n_t, p.cfg.n_r, p.cfg.n_e, p.cfg.n_s, p.cfg.alpha,
              p.cfg.beta, p.cfg.snr_db(), p.cfg.r_s,
              static_cast<unsigned long long>(p.seed));
}

int cmd_sop_theory(const PointArgs& a) {
  const Point p = make_point(a);
  print_point_header(p);
  std::printf("c_m             %.9g bits/s/Hz\n",
              main_capacity(p.cfg, p.ch, p.phase, p.bf));
  std::printf("sop_theory      %.9g\n", sop_theory(p.cfg, p.ch, p.phase, p.bf));
  std::printf("sop_bound_hsnr  %.9g\n",
              sop_high_snr_bound(p.cfg, p.ch, p.phase, p.bf));
  return 0;
}

int cmd_sop_mc(const PointArgs& a, std::uint64_t trials, int threads) {
  const Point p = make_point(a);
  print_point_header(p);
  const double theo = sop_theory(p.cfg, p.ch, p.phase, p.bf);
  const McEstimate est = empirical_sop(p.cfg, p.ch, p.phase, p.bf, trials,
                                       mix_seed(p.seed, 13), threads);
  std::printf("sop_theory      %.9g\n", theo);
  std::printf("sop_mc          %.9g\n", est.p_hat);
  std::printf("sop_mc_stderr   %.9g\n", est.std_err);
  std::printf("abs_diff        %.9g\n", std::abs(theo - est.p_hat));
  std::printf("trials          %llu\n",
              static_cast<unsigned long long>(est.trials));
  return 0;
}

int cmd_optimize(const std::string& config_path, std::uint64_t seed,
                 bool seed_set, const std::string& solver, double xi,
                 int iter_max) {
  Scenario s = load_scenario(config_path);
  const std::uint64_t use_seed = seed_set ? seed : s.seed;
  PhaseSolverKind kind;
  if (solver == "sdr")
    kind = PhaseSolverKind::kSdr;
  else if (solver == "manifold")
    kind = PhaseSolverKind::kManifold;
  else if (solver == "closed-form")
    kind = PhaseSolverKind::kClosedForm;
  else
    throw std::invalid_argument("unknown solver '" + solver + "'");

  const ChannelSet ch = generate_channels(s.system, mix_seed(use_seed, 11),
                                          s.noise);
  AOOptions opt;
  opt.xi = xi;
  opt.iter_max = iter_max;
  const AOReport rep =
      alternating_optimize(s.system, ch, kind, mix_seed(use_seed, 14), opt);

  std::printf("iteration  p_out          objective\n");
  for (const AOStep& step : rep.trace)
    std::printf("%9d  %.9g  %.9g\n", step.iteration, step.p_out,
                step.objective);
  std::printf("converged=%s iterations=%d final_sop=%.9g\n",
              rep.converged ? "true" : "false", rep.iterations_used,
              sop_theory(s.system, ch, rep.final_q, rep.final_b));
  return 0;
}

int cmd_sweep(const std::string& config_path, std::uint64_t seed,
              bool seed_set, std::uint64_t trials, bool trials_set,
              const std::string& out_path, bool timing, int threads) {
  Scenario s = load_scenario(config_path);
  if (seed_set) s.seed = seed;
  if (trials_set) s.trials = trials;
  const auto rows = run_scenario(s, timing, threads);
  if (out_path.empty()) {
    write_csv(std::cout, rows);
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out)
      throw std::invalid_argument("cannot open output file '" + out_path + "'");
    write_csv(out, rows);
  }
  return 0;
}

int cmd_validate(std::uint64_t seed, int threads) {
  AcceptanceOptions opt;
  opt.seed = seed;
  opt.n_threads = threads;
  const auto results = run_acceptance(opt, &std::cout);
  const bool ok = all_passed(results);
  std::printf("%zu/%zu criteria passed\n",
              results.size() - static_cast<std::size_t>(
                                   std::count_if(results.begin(), results.end(),
                                                 [](const CriterionResult& r) {
                                                   return !r.passed;
                                                 })),
              results.size());
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Secrecy-outage analysis and optimization for RIS-assisted "
               "MIMO wiretap channels"};
  app.require_subcommand(1);

  PointArgs pa;
  std::uint64_t trials = 100000;
  bool trials_set = false;
  std::uint64_t seed = 1;
  bool seed_set = false;
  int threads = 0;
  std::string out_path;
  std::string solver = "manifold";
  double xi = 1e-5;
  int iter_max = 50;
  bool timing = false;

  auto add_config = [&](CLI::App* cmd) {
    cmd->add_option("--config", pa.config_path, "scenario JSON file")
        ->required();
  };
  auto add_seed = [&](CLI::App* cmd) {
    cmd->add_option("--seed", seed, "override the scenario seed")
        ->each([&](const std::string&) { seed_set = true; });
  };

  CLI::App* c_theory =
      app.add_subcommand("sop-theory", "closed-form outage at a single point");
  add_config(c_theory);
  add_seed(c_theory);
  c_theory->add_option("--phase", pa.phase_mode, "ones|random");

  CLI::App* c_mc =
      app.add_subcommand("sop-mc", "Monte Carlo outage at a single point");
  add_config(c_mc);
  add_seed(c_mc);
  c_mc->add_option("--phase", pa.phase_mode, "ones|random");
  c_mc->add_option("--trials", trials, "Monte Carlo trials");
  c_mc->add_option("--threads", threads, "worker threads (0 = hardware)");

  CLI::App* c_opt =
      app.add_subcommand("optimize", "one alternating-optimization run");
  add_config(c_opt);
  add_seed(c_opt);
  c_opt->add_option("--solver", solver, "sdr|manifold|closed-form");
  c_opt->add_option("--xi", xi, "stopping improvement threshold");
  c_opt->add_option("--iter-max", iter_max, "iteration cap");

  CLI::App* c_sweep = app.add_subcommand("sweep", "run a scenario sweep (CSV)");
  add_config(c_sweep);
  add_seed(c_sweep);
  c_sweep->add_option("--trials", trials, "Monte Carlo trials per cell")
      ->each([&](const std::string&) { trials_set = true; });
  c_sweep->add_option("--out", out_path, "output CSV path (default stdout)");
  c_sweep->add_flag("--timing", timing,
                    "record wall-clock times (breaks byte reproducibility)");
  c_sweep->add_option("--threads", threads, "worker threads (0 = hardware)");

  CLI::App* c_val = app.add_subcommand("validate", "run the acceptance suite");
  c_val->add_option("--seed", seed, "suite seed");
  c_val->add_option("--threads", threads, "worker threads (0 = hardware)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_theory->parsed()) {
      if (seed_set) {
        pa.seed = seed;
        pa.seed_set = true;
      }
      return cmd_sop_theory(pa);
    }
    if (c_mc->parsed()) {
      if (seed_set) {
        pa.seed = seed;
        pa.seed_set = true;
      }
      return cmd_sop_mc(pa, trials, threads);
    }
    if (c_opt->parsed())
      return cmd_optimize(pa.config_path, seed, seed_set, solver, xi,
                          iter_max);
    if (c_sweep->parsed())
      return cmd_sweep(pa.config_path, seed, seed_set, trials, trials_set,
                       out_path, timing, threads);
    if (c_val->parsed()) return cmd_validate(seed, threads);
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
