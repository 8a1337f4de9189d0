#pragma once

#include "config.hpp"
#include "report.hpp"

#include "morsecup/errors.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace morsecup::cli {

enum class ExitCode { Ok = 0, Invariant = 1, InvalidInput = 2, Genericity = 3, Io = 4 };

/// How a library error maps onto the process exit code.
ExitCode exit_code_for(ErrorCode code);

/// Builds every datum's complex and cohomology.
Report cmd_complex(const RunConfig& cfg);

/// Relative length of alpha against the attracting datum, plus the absolute
/// length against gamma and the remark inequality when gamma is given.
/// Throws InvalidConfig when alpha_label or attracting_label is missing.
Report cmd_cuplength(const RunConfig& cfg);

struct VerifyOptions {
  bool mutate_cup_entry = false;
  int swap_trials = 100;
  int swap_max_dim = 6;
};

/// Runs the whole battery; failures land in report.checks, not in exceptions.
Report cmd_verify(const RunConfig& cfg, const VerifyOptions& options = {});

struct SwapRuleResult {
  int trials = 0;
  int failures = 0;
  nlohmann::json counterexample;  // null when every trial passed
};

/// sign(X cap Y1 cap Y2) = (-1)^{codim Y1 codim Y2} sign(X cap Y2 cap Y1) on
/// random transverse linear configurations with ambient dimension <= max_dim.
SwapRuleResult swap_rule_check(int trials, std::uint64_t seed, int max_dim = 6);

}  // namespace morsecup::cli
