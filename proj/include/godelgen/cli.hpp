#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace godelgen {

// Exit statuses of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitVerifyFailed = 1,
  kExitRejected = 2,
  kExitParseError = 3,
  kExitFuel = 4,
};

// Runs one command. `args` excludes the program name. Results go to `out`,
// diagnostics to `err`; the return value is the exit status.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace godelgen
