#pragma once

#include <string>
#include <vector>

namespace rrc {

// Outcome of one acceptance check.  `detail` carries the case counts on
// success and a verbatim dump of the first counterexample on failure.
struct CriterionResult {
  int index = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

// Number of worker threads the battery should use: `requested` when
// positive, otherwise the THREADS environment variable, otherwise the
// hardware count, clamped to [1, 16].  Results never depend on this.
int battery_threads(int requested);

// Runs the full acceptance battery.  Criteria 1..9 exercise the library;
// criterion 10 re-runs CLI commands through `cli_path` and compares output
// bytes, so it needs the path of the built binary (empty path fails it).
std::vector<CriterionResult> run_acceptance_battery(const std::string& cli_path,
                                                    int threads = 0);

}  // namespace rrc
