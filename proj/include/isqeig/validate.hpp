#pragma once
// Oracle suites behind `isqeig validate`: each check compares a module against an
// independent computation and records the measured discrepancy.
#include <cstdint>
#include <string>
#include <vector>

namespace isq {

struct CheckResult {
  std::string module;
  std::string name;
  double value = 0.0;      // measured discrepancy
  double tolerance = 0.0;
  bool pass = false;
};

struct ValidationReport {
  std::vector<CheckResult> checks;
  bool passed() const;
};

/// Module names accepted by run_validation.
const std::vector<std::string>& validation_modules();

/// Runs every suite, or only `module` when it is non-empty. Randomized samples are
/// drawn from a generator seeded with `seed`, so equal seeds give equal reports.
ValidationReport run_validation(const std::string& module, std::uint64_t seed);

}  // namespace isq
