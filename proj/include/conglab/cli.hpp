#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace conglab {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,           // holds / success
  kExitFails = 1,        // identity fails or search negative; artifact written
  kExitUsage = 2,        // usage, file or parse error
  kExitInconclusive = 3  // a cap was hit
};

/// Runs one invocation; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace conglab
