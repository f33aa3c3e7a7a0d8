#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace krylov::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  exit_converged = 0,
  exit_usage = 1,
  exit_breakdown = 2,
  exit_max_iterations = 3,
};

/// Runs the tool on `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace krylov::cli
