// Runs every acceptance criterion and prints one PASS/FAIL line per
// criterion. Exit status is nonzero when any criterion fails.

#include <cstdlib>
#include <iostream>

#include "rissop/acceptance.hpp"

int main(int argc, char** argv) {
  rissop::AcceptanceOptions opt;
  if (argc > 1) opt.seed = std::strtoull(argv[1], nullptr, 10);
  const auto results = rissop::run_acceptance(opt, &std::cout);
  std::cout << (rissop::all_passed(results) ? "ALL CRITERIA PASSED"
                                            : "CRITERIA FAILED")
            << std::endl;
  return rissop::all_passed(results) ? 0 : 1;
}
