#pragma once

// Command-line front end. `run` parses arguments, dispatches to a subcommand
// and maps library errors onto exit codes; it never calls std::exit, so tests
// can drive it in-process.

#include <ostream>
#include <string>
#include <vector>

namespace secinvest::cli {

enum ExitCode : int {
  kOk = 0,
  kIoError = 1,
  kValidationError = 2,  // also usage errors
  kSolverError = 3,
  kSizingError = 4,
};

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace secinvest::cli
