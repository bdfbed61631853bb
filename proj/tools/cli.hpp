#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace varcal::cli {

/// Process exit codes.
enum ExitCode : int {
    kOk = 0,
    kInternalError = 1,
    kParseError = 2,
    kSolverFailure = 3,
    kInfeasible = 4,
};

/// Runs `varcal <args...>` (args exclude the program name), writing the
/// report to `out` and diagnostics to `err`. Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace varcal::cli
