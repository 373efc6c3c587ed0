#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace taulab::checks {

// Outcome of one named acceptance check.  `worst` is the residual that came
// closest to (or past) its gate, reported together with that gate so the
// margin is visible in reports.
struct CheckResult {
  std::string name;
  std::string suite;
  bool passed = false;
  double worst = 0.0;
  double tolerance = 0.0;
  double seconds = 0.0;
  std::string detail;
};

struct CheckOptions {
  std::uint64_t seed = 2026;
  // Raises every gate to at least this value (0 keeps the pinned gates).
  double tol_floor = 0.0;
};

struct CheckSpec {
  std::string name;
  std::string suite;  // exp, bessel, lame, cauchy, pvi, hypergeom
  CheckResult (*run)(const CheckOptions&);
};

// The acceptance checks, in criterion order.
const std::vector<CheckSpec>& registry();

// Runs the checks whose suite matches (everything for "all").  Throws
// std::invalid_argument for an unknown suite name.
std::vector<CheckResult> run_suite(const std::string& suite,
                                   const CheckOptions& opts = {});

}  // namespace taulab::checks
