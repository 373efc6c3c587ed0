// Release gate: runs every registered acceptance check and prints one
// verdict line per criterion.  Exits nonzero if any line fails.

#include "taulab/checks.hpp"

#include <cstdio>

int main() {
  const auto results = taulab::checks::run_suite("all");

  int failures = 0;
  double total = 0.0;
  int index = 0;
  for (const auto& r : results) {
    ++index;
    total += r.seconds;
    if (!r.passed) ++failures;
    std::printf("[%s] criterion %d: %-28s  worst %.3e vs tol %.1e  (%.2fs)  %s\n",
                r.passed ? "PASS" : "FAIL", index, r.name.c_str(), r.worst,
                r.tolerance, r.seconds, r.detail.c_str());
  }

  // final criterion: the whole suite finishes inside the runtime budget
  // with zero failures
  const bool budget_ok = failures == 0 && total < 300.0;
  std::printf("[%s] criterion %d: %-28s  elapsed %.1fs of 300s, %d failures\n",
              budget_ok ? "PASS" : "FAIL", index + 1, "full_suite_runtime",
              total, failures);

  return (failures == 0 && budget_ok) ? 0 : 1;
}
