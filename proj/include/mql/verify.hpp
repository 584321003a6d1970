#pragma once
// The project's self-verification suite: eight named checks that pin the
// library's exact values, closed forms, bound compliance, adversary
// guarantees, and structural invariants. The CLI's `verify` command and
// the standalone acceptance runner both run exactly this list.

#include <cstdint>
#include <string>
#include <vector>

namespace mql {

// One named check: whether it held and a one-line report of what was
// measured (values, corpus sizes, runtime against its budget).
struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct VerifyOptions {
  // Shrinks instance ranges (roughly n <= 6) so the whole suite finishes
  // in well under a minute; every check still runs.
  bool fast = false;
  // Worker threads forwarded to the solver; 0 = MQL_THREADS or 1.
  int threads = 0;
  // Seed for the randomized transcript corpus (fixed default keeps runs
  // reproducible; vary it to sample a different corpus).
  std::uint64_t seed = 20260818;
};

// Runs all checks in their fixed order. Never throws for a failed
// property; an unexpected exception inside a check marks it failed with
// the message in `detail`.
std::vector<CheckResult> run_verification(const VerifyOptions& opts = {});

inline bool all_passed(const std::vector<CheckResult>& results) {
  for (const auto& r : results)
    if (!r.pass) return false;
  return true;
}

}  // namespace mql
