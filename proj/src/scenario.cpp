#include "rissop/scenario.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "rissop/analytics.hpp"
#include "rissop/model.hpp"
#include "rissop/montecarlo.hpp"
#include "rissop/optimize.hpp"
#include "rissop/rng.hpp"

namespace rissop {

using nlohmann::json;

namespace {

constexpr std::uint64_t kTagChannels = 11;
constexpr std::uint64_t kTagAo = 100;
constexpr std::uint64_t kTagMc = 200;

const char* const kAxisNames[] = {"snr_db", "r_s", "n_e", "n_t", "n_r", "n_s"};
const char* const kSchemeNames[] = {"mrt_no_ris", "mrt_ps", "ao_cs", "ao_sdr",
                                    "ao_man"};

[[noreturn]] void config_error(const std::string& msg) {
  throw std::invalid_argument("scenario config: " + msg);
}

void check_keys(const json& j, const char* ctx,
                std::initializer_list<const char*> allowed) {
  if (!j.is_object()) config_error(std::string(ctx) + " must be an object");
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* k : allowed)
      if (item.key() == k) {
        known = true;
        break;
      }
    if (!known)
      config_error("unknown key '" + item.key() + "' in " + ctx);
  }
}

double require_number(const json& j, const char* ctx, const char* key) {
  if (!j.contains(key))
    config_error(std::string(ctx) + " is missing required key '" + key + "'");
  if (!j[key].is_number())
    config_error(std::string(ctx) + "." + key + " must be a number");
  return j[key].get<double>();
}

int require_count(const json& j, const char* ctx, const char* key) {
  const double v = require_number(j, ctx, key);
  if (v < 1 || v != std::floor(v))
    config_error(std::string(ctx) + "." + key + " must be a positive integer");
  return static_cast<int>(v);
}

}  // namespace

const char* to_string(SweepAxis axis) {
  return kAxisNames[static_cast<int>(axis)];
}

const char* to_string(Scheme scheme) {
  return kSchemeNames[static_cast<int>(scheme)];
}

SweepAxis sweep_axis_from_string(const std::string& s) {
  for (int i = 0; i < 6; ++i)
    if (s == kAxisNames[i]) return static_cast<SweepAxis>(i);
  config_error("unknown sweep axis '" + s + "'");
}

Scheme scheme_from_string(const std::string& s) {
  for (int i = 0; i < 5; ++i)
    if (s == kSchemeNames[i]) return static_cast<Scheme>(i);
  config_error("unknown scheme '" + s + "'");
}

namespace {

SystemConfig apply_axis(SystemConfig cfg, SweepAxis axis, double v) {
  const auto as_count = [&](const char* what) {
    if (v < 1 || v != std::floor(v))
      config_error(std::string("sweep value for ") + what +
                   " must be a positive integer");
    return static_cast<int>(v);
  };
  switch (axis) {
    case SweepAxis::kSnrDb:
      cfg.rho = cfg.sigma2 * std::pow(10.0, v / 10.0);
      break;
    case SweepAxis::kRs:
      cfg.r_s = v;
      break;
    case SweepAxis::kNe:
      cfg.n_e = as_count("n_e");
      break;
    case SweepAxis::kNt:
      cfg.n_t = as_count("n_t");
      break;
    case SweepAxis::kNr:
      cfg.n_r = as_count("n_r");
      break;
    case SweepAxis::kNs:
      cfg.n_s = as_count("n_s");
      break;
  }
  return cfg;
}

void check_scheme_fits(Scheme scheme, const SystemConfig& cfg, double value) {
  if (scheme == Scheme::kAoCs && cfg.n_r != 1) {
    std::ostringstream os;
    os << "scheme ao_cs requires n_r == 1 but the sweep point (value "
       << value << ") has n_r = " << cfg.n_r;
    config_error(os.str());
  }
}

std::uint64_t dims_key(const SystemConfig& cfg) {
  return (static_cast<std::uint64_t>(cfg.n_t) << 32) |
         static_cast<std::uint64_t>(cfg.n_r);
}

struct CellOutcome {
  PhaseVector q;
  Beamformer b;
  ChannelSet ch;
  int iterations = 0;
};

CellOutcome run_cell(const Scenario& s, const SystemConfig& cfg,
                     Scheme scheme) {
  const std::uint64_t ch_seed =
      mix_seed(s.seed, kTagChannels, dims_key(cfg), cfg.n_s);
  ChannelSet ch = generate_channels(cfg, ch_seed, s.noise);
  // Optimizer seeds exclude n_e and the sweep position on purpose: cells that
  // share the legitimate-channel dimensions reuse the same start, so sweeps
  // over n_e or SNR move only through the quantities they claim to move.
  const std::uint64_t ao_seed =
      mix_seed(s.seed, kTagAo + static_cast<std::uint64_t>(scheme),
               dims_key(cfg), cfg.n_s);

  switch (scheme) {
    case Scheme::kMrtNoRis: {
      ChannelSet bare = ch;
      bare.h_ris.setZero();
      bare.g_r.setZero();
      Beamformer b = mrt_baseline(cfg, bare, false);
      return CellOutcome{PhaseVector::ones(cfg.n_s), b, std::move(bare), 0};
    }
    case Scheme::kMrtPs: {
      MrtPsResult r = mrt_ps_optimize(cfg, ch);
      return CellOutcome{r.q, r.b, std::move(ch), r.iterations};
    }
    case Scheme::kAoCs:
    case Scheme::kAoSdr:
    case Scheme::kAoMan: {
      const PhaseSolverKind kind = scheme == Scheme::kAoCs
                                       ? PhaseSolverKind::kClosedForm
                                       : scheme == Scheme::kAoSdr
                                             ? PhaseSolverKind::kSdr
                                             : PhaseSolverKind::kManifold;
      AOReport rep = alternating_optimize(cfg, ch, kind, ao_seed);
      return CellOutcome{rep.final_q, rep.final_b, std::move(ch),
                         rep.iterations_used};
    }
  }
  throw std::logic_error("unknown scheme");
}

}  // namespace

void Scenario::validate() const {
  system.validate();
  noise.validate();
  if (has_sweep) {
    if (sweep_values.empty()) config_error("sweep grid must be non-empty");
    for (std::size_t i = 1; i < sweep_values.size(); ++i)
      if (!(sweep_values[i] > sweep_values[i - 1]))
        config_error("sweep grid must be strictly increasing");
    if (schemes.empty()) config_error("sweep needs at least one scheme");
    for (double v : sweep_values) {
      const SystemConfig cfg = apply_axis(system, axis, v);
      cfg.validate();
      for (Scheme scheme : schemes) check_scheme_fits(scheme, cfg, v);
    }
  }
}

Scenario scenario_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    config_error(std::string("not valid JSON: ") + e.what());
  }
  check_keys(j, "scenario", {"name", "system", "noise", "sweep", "schemes",
                             "trials", "seed"});

  Scenario s;
  if (j.contains("name")) s.name = j["name"].get<std::string>();

  bool have_noise = false;
  if (j.contains("noise")) {
    check_keys(j["noise"], "noise",
               {"bandwidth_hz", "noise_figure_db", "gain_alice_bob",
                "gain_alice_ris", "gain_ris_bob"});
    const json& n = j["noise"];
    if (n.contains("bandwidth_hz"))
      s.noise.bandwidth_hz = n["bandwidth_hz"].get<double>();
    if (n.contains("noise_figure_db"))
      s.noise.noise_figure_db = n["noise_figure_db"].get<double>();
    if (n.contains("gain_alice_bob"))
      s.noise.gain_alice_bob = n["gain_alice_bob"].get<double>();
    if (n.contains("gain_alice_ris"))
      s.noise.gain_alice_ris = n["gain_alice_ris"].get<double>();
    if (n.contains("gain_ris_bob"))
      s.noise.gain_ris_bob = n["gain_ris_bob"].get<double>();
    have_noise = true;
  }

  if (!j.contains("system")) config_error("missing required block 'system'");
  const json& sys = j["system"];
  check_keys(sys, "system",
             {"n_t", "n_r", "n_e", "n_s", "alpha", "beta", "rho", "sigma2",
              "sigma_e2", "r_s", "snr_db"});
  s.system.n_t = require_count(sys, "system", "n_t");
  s.system.n_r = require_count(sys, "system", "n_r");
  s.system.n_e = require_count(sys, "system", "n_e");
  s.system.n_s = require_count(sys, "system", "n_s");
  s.system.alpha = require_number(sys, "system", "alpha");
  s.system.beta = require_number(sys, "system", "beta");
  s.system.r_s = require_number(sys, "system", "r_s");
  if (sys.contains("sigma2")) {
    s.system.sigma2 = sys["sigma2"].get<double>();
  } else if (have_noise) {
    s.system.sigma2 = dbm_to_watts(noise_floor_dbm(s.noise));
  }
  s.system.sigma_e2 =
      sys.contains("sigma_e2") ? sys["sigma_e2"].get<double>() : s.system.sigma2;
  if (sys.contains("rho") && sys.contains("snr_db"))
    config_error("give either system.rho or system.snr_db, not both");
  if (sys.contains("rho")) {
    s.system.rho = sys["rho"].get<double>();
  } else if (sys.contains("snr_db")) {
    s.system.rho =
        s.system.sigma2 * std::pow(10.0, sys["snr_db"].get<double>() / 10.0);
  }

  if (j.contains("sweep")) {
    const json& sw = j["sweep"];
    check_keys(sw, "sweep", {"axis", "values"});
    if (!sw.contains("axis") || !sw.contains("values"))
      config_error("sweep needs both 'axis' and 'values'");
    s.axis = sweep_axis_from_string(sw["axis"].get<std::string>());
    for (const auto& v : sw["values"]) {
      if (!v.is_number()) config_error("sweep values must be numbers");
      s.sweep_values.push_back(v.get<double>());
    }
    s.has_sweep = true;
  }
  if (j.contains("schemes")) {
    for (const auto& v : j["schemes"])
      s.schemes.push_back(scheme_from_string(v.get<std::string>()));
  }
  if (j.contains("trials")) s.trials = j["trials"].get<std::uint64_t>();
  if (j.contains("seed")) s.seed = j["seed"].get<std::uint64_t>();

  s.system.validate();
  s.noise.validate();
  if (s.has_sweep) s.validate();
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) config_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return scenario_from_json_text(buf.str());
}

std::vector<ResultRow> run_scenario(const Scenario& s, bool collect_timing,
                                    int n_threads) {
  if (!s.has_sweep)
    config_error("running a scenario requires a sweep block");
  s.validate();

  std::vector<ResultRow> rows;
  rows.reserve(s.sweep_values.size() * s.schemes.size());
  std::uint64_t cell_index = 0;
  for (double value : s.sweep_values) {
    const SystemConfig cfg = apply_axis(s.system, s.axis, value);
    for (Scheme scheme : s.schemes) {
      const auto t0 = std::chrono::steady_clock::now();
      const CellOutcome cell = run_cell(s, cfg, scheme);

      ResultRow row;
      row.scenario = s.name;
      row.scheme = to_string(scheme);
      row.sweep_axis = to_string(s.axis);
      row.sweep_value = value;
      row.snr_db = cfg.snr_db();
      row.r_s = cfg.r_s;
      row.n_t = cfg.n_t;
      row.n_r = cfg.n_r;
      row.n_e = cfg.n_e;
      row.n_s = cfg.n_s;
      row.alpha = cfg.alpha;
      row.beta = cfg.beta;
      row.sop_theory = sop_theory(cfg, cell.ch, cell.q, cell.b);
      if (s.trials > 0) {
        const std::uint64_t mc_seed = mix_seed(
            s.seed, kTagMc + static_cast<std::uint64_t>(scheme), cell_index);
        const McEstimate est = empirical_sop(cfg, cell.ch, cell.q, cell.b,
                                             s.trials, mc_seed, n_threads);
        row.has_mc = true;
        row.sop_mc = est.p_hat;
        row.sop_mc_stderr = est.std_err;
      }
      row.iterations = cell.iterations;
      if (collect_timing) {
        const auto t1 = std::chrono::steady_clock::now();
        row.wall_ms =
            std::chrono::duration<double, std::milli>(t1 - t0).count();
      }
      row.seed = s.seed;
      rows.push_back(std::move(row));
      ++cell_index;
    }
  }
  return rows;
}

const char* const kCsvHeader =
    "scenario,scheme,sweep_axis,sweep_value,snr_db,r_s,n_t,n_r,n_e,n_s,alpha,"
    "beta,sop_theory,sop_mc,sop_mc_stderr,iterations,wall_ms,seed";

namespace {

std::string fmt9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

}  // namespace

void write_csv(std::ostream& os, const std::vector<ResultRow>& rows) {
  os << kCsvHeader << '\n';
  for (const ResultRow& r : rows) {
    os << r.scenario << ',' << r.scheme << ',' << r.sweep_axis << ','
       << fmt9(r.sweep_value) << ',' << fmt9(r.snr_db) << ',' << fmt9(r.r_s)
       << ',' << r.n_t << ',' << r.n_r << ',' << r.n_e << ',' << r.n_s << ','
       << fmt9(r.alpha) << ',' << fmt9(r.beta) << ',' << fmt9(r.sop_theory)
       << ',' << (r.has_mc ? fmt9(r.sop_mc) : std::string())
       << ',' << (r.has_mc ? fmt9(r.sop_mc_stderr) : std::string())
       << ',' << r.iterations << ',' << fmt9(r.wall_ms) << ',' << r.seed
       << '\n';
  }
}

std::string to_csv(const std::vector<ResultRow>& rows) {
  std::ostringstream os;
  write_csv(os, rows);
  return os.str();
}

}  // namespace rissop
