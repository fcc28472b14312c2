#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cmtrace {

/// Knobs shared by the verification suites. Zero (or negative for slack)
/// means "use the suite's default"; every report records the values in
/// effect.
struct VerifyOptions {
  int n = 0;                          // matrix size; 0 = suite default range
  int samples = 0;                    // sample count; 0 = suite default
  unsigned long long seed = 20260824; // RNG seed, recorded in the report
  double tol = 0;                     // tolerance override; 0 = suite default
  int budget = 0;                     // closure degree budget; 0 = default
  int slack = -1;                     // closure slack; negative = default
};

struct SuiteResult {
  std::string suite;
  int checks = 0;
  int failures = 0;
  double max_residual = 0.0;  // largest numeric residual seen, 0 if none
  bool ran = false;           // false when the suite name is unknown
  bool passed() const { return ran && failures == 0; }
};

const std::vector<std::string>& suite_names();

/// Runs one suite, streaming one structured record per check to out.
/// Deterministic for a fixed seed: two runs emit byte-identical records.
SuiteResult run_suite(const std::string& name, const VerifyOptions& opts,
                      std::ostream& out);

}  // namespace cmtrace
