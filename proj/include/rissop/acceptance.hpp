#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace rissop {

/// One checked property of the full stack: closed forms against Monte Carlo,
/// trend and bound checks, solver-versus-oracle comparisons.
struct CriterionResult {
  std::string name;
  bool passed = false;
  double measured = 0.0;   // worst observed value of the checked quantity
  double tolerance = 0.0;  // the pinned bound it must respect
  std::string detail;
};

struct AcceptanceOptions {
  std::uint64_t seed = 1;
  int n_threads = 0;  // 0: hardware concurrency
};

/// Runs every acceptance criterion. When `progress` is non-null, one
/// PASS/FAIL line per criterion is printed as it completes.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt = {},
                                            std::ostream* progress = nullptr);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace rissop
