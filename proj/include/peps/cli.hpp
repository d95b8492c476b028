// Copyright 2026 The pepsim Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace peps::cli {

/// Stable exit codes for scripting.
enum ExitCode : int {
  kSuccess = 0,
  kConfigError = 2,      ///< bad flags, unreadable or malformed circuit
  kBudgetRefusal = 3,    ///< contraction would not fit the memory budget
  kNumericalFailure = 4  ///< numerical error or failed verification
};

/// Environment variable holding the default memory budget.
inline constexpr const char* kBudgetEnv = "PEPS_MEMORY_BUDGET";

/// Entry point: `peps <generate|amplitude|estimate|sample|verify> ...`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Convenience overload; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace peps::cli
