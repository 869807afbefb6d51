#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qpa {

/// Exit codes of the command-line front end.
enum ExitCode { kExitOk = 0, kExitVerifyFailed = 1, kExitParse = 2, kExitPrecondition = 3 };

/// Runs one command line (args exclude the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qpa
