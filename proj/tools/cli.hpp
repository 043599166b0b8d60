#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tdcode::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,     // a check reported a mismatch
  kInvalid = 2,     // bad arguments or words
  kResource = 3,    // a state budget was exceeded
};

/// Runs one command line (without the program name) and returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tdcode::cli
