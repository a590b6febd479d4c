#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sicps {

enum ExitCode : int { kExitOk = 0, kExitUsage = 2, kExitVerification = 3 };

/// Runs one command line. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sicps
