#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nodim {

enum ExitCode : int {
  kExitOk = 0,
  kExitVerifyFailed = 1,
  kExitParseError = 2,
  kExitInvalid = 3,
  kExitDigestMismatch = 4,
};

/// Runs one command line (without the program name). Certificates and data
/// go to files or `out`; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nodim
