#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cspin::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct Options {
  bool performance = true;  ///< include the timed throughput criteria
  int only = 0;             ///< run a single criterion (1..10); 0 = all
  unsigned seed = 20250801; ///< deterministic random draws
};

/// Runs the acceptance criteria and returns one result per criterion.
std::vector<CriterionResult> run_acceptance(const Options& options = {});

/// One "PASS|FAIL id. name — detail (x.xx s)" line per criterion; returns
/// true when everything passed.
bool print_results(const std::vector<CriterionResult>& results,
                   std::ostream& out);

}  // namespace cspin::acceptance
