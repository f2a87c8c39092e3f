#pragma once

// Verification suites shared by the CLI and the acceptance runner. Each check
// compares engine output against an independent computation.

#include <functional>
#include <string>
#include <vector>

#include "hypcount/engine.hpp"

namespace hypcount {

struct CheckResult {
  std::string suite;
  int criterion = 0;  // acceptance criterion this check feeds, 0 if none
  std::string name;
  bool passed = false;
  std::string detail;
  double ms = 0;
};

struct VerifyOptions {
  unsigned jobs = 1;
  std::uint64_t max_curves = std::uint64_t{1} << 30;
};

/// paper-formulas, oracle-odd, oracle-even, invariants, genus1-table, appendix.
const std::vector<std::string>& suite_names();

/// Throws std::invalid_argument for an unknown suite; BudgetExceeded propagates.
std::vector<CheckResult> run_suite(const std::string& suite, Engine& engine, const VerifyOptions& opts,
                                   const std::function<void(const CheckResult&)>& on_result = {});

std::string to_json(const CheckResult& r);

}  // namespace hypcount
