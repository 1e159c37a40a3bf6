#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace finsch {

// Exit codes of the command line front end.
enum ExitCode { kExitTrue = 0, kExitFalse = 1, kExitUndecided = 2, kExitInputError = 3 };

// Runs one command; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace finsch
