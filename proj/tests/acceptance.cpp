// Acceptance suite: runs every criterion at its stated grid and budget and
// prints one pass/fail line per criterion.  Exact symbolic equality
// throughout (tolerance zero).
#include <cstdio>

#include "toda/suite.hpp"

int main() {
  auto results = toda::run_acceptance(toda::env_thread_cap());
  bool all = true;
  for (const auto& c : results) {
    std::printf("%s criterion %2d: %s (%.2fs < %.0fs)%s%s\n", c.pass ? "PASS" : "FAIL", c.number,
                c.label.c_str(), c.seconds, c.limit_seconds, c.detail.empty() ? "" : " -- ",
                c.detail.c_str());
    all = all && c.pass;
  }
  std::printf("%s\n", all ? "acceptance: all criteria passed" : "acceptance: FAILURES present");
  return all ? 0 : 1;
}
