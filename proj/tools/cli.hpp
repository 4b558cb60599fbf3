#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace logspiral::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kSolver = 2, kVerifyFailed = 3 };

/// Runs one command line (without the program name), writing the report or
/// CSV to out and diagnostics to err. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace logspiral::cli
