#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace denjoy {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitNotHyperbolic = 1,
  kExitInvalid = 2,
  kExitIo = 3,
  kExitSolver = 4,
  kExitInconclusive = 5,
};

/// Runs the command-line tool on args (without the program name). Normal
/// output goes to out; errors are written to err as a JSON object
/// {"error": NAME, "message": TEXT}.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace denjoy
