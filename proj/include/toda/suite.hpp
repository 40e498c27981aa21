#pragma once

#include <vector>

#include "toda/report.hpp"

namespace toda {

/// One acceptance criterion: exact symbolic equality over the stated grid,
/// within the stated wall-clock budget.
struct CriterionResult {
  int number = 0;
  std::string label;
  bool pass = false;
  double seconds = 0;
  double limit_seconds = 0;
  std::string detail;  // first failure, when any
};

/// Runs the full acceptance grid; `threads` > 1 runs criteria concurrently
/// (each criterion is itself sequential).
std::vector<CriterionResult> run_acceptance(int threads = 1);

/// Minimal-parameter run of every identity checker.  With
/// `negative_control`, appends a deliberately corrupted closed form, which
/// must be reported as failing.
std::vector<Report> run_smoke(bool negative_control = false, int threads = 1);

int env_thread_cap();

}  // namespace toda
