#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "qcoh/measures.hpp"
#include "qcoh/tolerances.hpp"
#include "qcoh/trial_runner.hpp"

namespace qcoh {

// One verification suite: a batch of seeded trials, each reduced to a margin
// (>= 0 passes). Hard suites gate the exit code; census suites only report
// their satisfaction rate.
struct SuiteResult {
  std::string name;
  std::size_t trials = 0;
  std::size_t passes = 0;
  double worst_margin = 0.0;
  std::vector<nlohmann::json> counterexamples;
  bool hard = true;
  bool passed = true;
};

struct VerifyOptions {
  // Baseline Monte-Carlo budget. 200 reproduces the normative suite sizes;
  // other values scale every suite proportionally, 0 runs everything empty.
  std::size_t base_trials = 200;
  std::vector<std::size_t> dims = {2, 3};
  std::uint64_t seed = 0;
  Execution mode = Execution::parallel;
  OptimizerConfig optimizer;
  Tolerances tol;
  // Negative-control hook: corrupts one generated channel so the
  // completeness suite must fail.
  bool inject_defect = false;
};

struct VerificationReport {
  std::vector<SuiteResult> suites;
  bool overall_pass = true;
};

VerificationReport run_verification(const VerifyOptions& opts);

nlohmann::json report_to_json(const VerificationReport& report);

}  // namespace qcoh
