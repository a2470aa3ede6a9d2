#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gpal {

enum ExitCode : int {
  kExitOk = 0,
  kExitViolation = 1,  // a property check found a counterexample or witness
  kExitInput = 2,      // bad arguments, unreadable or malformed input
};

// Runs one command; `args` excludes the program name. Reports go to `out`,
// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gpal
