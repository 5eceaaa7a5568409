#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rogonlab::cli {

/// Process exit codes.
enum ExitCode : int {
  kSuccess = 0,
  kIoError = 1,
  kUsage = 2,
  kInvalidParameter = 3,
  kVerificationFailed = 4,
  kNumericalAbort = 5,
};

/// Runs the command line `args` (without the program name). Informational
/// output goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rogonlab::cli
