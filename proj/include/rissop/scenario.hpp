#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "rissop/types.hpp"

namespace rissop {

enum class SweepAxis { kSnrDb, kRs, kNe, kNt, kNr, kNs };
enum class Scheme { kMrtNoRis, kMrtPs, kAoCs, kAoSdr, kAoMan };

const char* to_string(SweepAxis axis);
const char* to_string(Scheme scheme);
SweepAxis sweep_axis_from_string(const std::string& s);
Scheme scheme_from_string(const std::string& s);

/// One experiment description: a base system, a sweep axis with its grid,
/// the schemes to run, and Monte Carlo settings.
struct Scenario {
  std::string name = "scenario";
  SystemConfig system;
  NoiseModel noise;
  bool has_sweep = false;
  SweepAxis axis = SweepAxis::kSnrDb;
  std::vector<double> sweep_values;
  std::vector<Scheme> schemes;
  std::uint64_t trials = 0;
  std::uint64_t seed = 1;

  void validate() const;
};

/// Parses a scenario from JSON text. Unknown keys are hard errors.
Scenario scenario_from_json_text(const std::string& text);
Scenario load_scenario(const std::string& path);

struct ResultRow {
  std::string scenario;
  std::string scheme;
  std::string sweep_axis;
  double sweep_value = 0.0;
  double snr_db = 0.0;
  double r_s = 0.0;
  int n_t = 0, n_r = 0, n_e = 0, n_s = 0;
  double alpha = 0.0, beta = 0.0;
  double sop_theory = 0.0;
  bool has_mc = false;
  double sop_mc = 0.0;
  double sop_mc_stderr = 0.0;
  int iterations = 0;
  double wall_ms = 0.0;
  std::uint64_t seed = 0;
};

/// Runs every (sweep value, scheme) cell: seeded legitimate channels,
/// scheme-specific optimization, closed-form outage and (when trials > 0)
/// Monte Carlo. Rows come back in (sweep, scheme) order and are fully
/// deterministic for a fixed scenario and seed. Timing is only collected on
/// request so that default output stays byte-reproducible.
std::vector<ResultRow> run_scenario(const Scenario& s,
                                    bool collect_timing = false,
                                    int n_threads = 1);

extern const char* const kCsvHeader;

/// Nine-significant-digit CSV with one row per cell.
void write_csv(std::ostream& os, const std::vector<ResultRow>& rows);
std::string to_csv(const std::vector<ResultRow>& rows);

}  // namespace rissop
