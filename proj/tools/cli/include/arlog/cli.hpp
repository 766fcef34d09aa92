#pragma once

#include <iosfwd>

namespace arlog::cli {

enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kInvalid = 2,
  kNoConvergence = 3,
  kVerdictFailed = 4,
};

// Parses argv (argv[0] is the program name) and runs one subcommand. Results
// go to `out` (or to --output), errors to `err` as a one-line JSON object
// {"code": ..., "message": ...}.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace arlog::cli
