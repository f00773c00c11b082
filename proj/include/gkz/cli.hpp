// Batch front end: one command per invocation, JSON report on stdout.
#pragma once

#include <istream>
#include <string>
#include <vector>

namespace gkz::cli {

inline constexpr const char* kVersion = "1.0.0";

enum ExitCode : int { kOk = 0, kObstruction = 1, kInputError = 2, kBudgetExceeded = 3 };

struct RunResult {
  int exit_code = kOk;
  std::string output;       // JSON report
  std::string diagnostics;  // for stderr
};

/// args excludes the program name. The configuration is read from --input or,
/// when absent, from `in`.
RunResult run(const std::vector<std::string>& args, std::istream& in);

}  // namespace gkz::cli
