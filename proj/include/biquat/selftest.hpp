// The acceptance checks, shared between the standalone acceptance binary and
// the CLI selftest subcommand. Each check is independent and reports its own
// pass/fail state; exact-arithmetic checks are distinguished from
// tolerance-bound ones so that failures can be attributed.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace biquat {

struct CheckOptions {
  double tol = 1e-9;
  std::uint64_t seed = 20240901;
  bool exact_mode = true;  // run criterion 1 with the rational backend
};

struct CheckResult {
  std::string name;
  bool pass = false;
  bool tolerance_bound = false;  // fails only through float tolerances
  double seconds = 0.0;
  std::string detail;
};

std::vector<CheckResult> run_acceptance(const CheckOptions& opt);

// 0 all pass, 2 logic failure, 3 tolerance-attributable failure only.
int acceptance_exit_code(const std::vector<CheckResult>& results,
                         const CheckOptions& opt);

}  // namespace biquat
