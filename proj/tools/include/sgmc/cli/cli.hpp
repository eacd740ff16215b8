#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sgmc::cli {

enum ExitCode : int { kExitOk = 0, kExitInput = 1, kExitVerification = 2, kExitCap = 3 };

/// Runs the sgmc command line; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sgmc::cli
