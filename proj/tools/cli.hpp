#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace pufguess::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kRuntime = 2 };

/// Runs the command line (without the program name). Everything the tool
/// prints goes to `out` / `err`, files go wherever --output points.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pufguess::cli
