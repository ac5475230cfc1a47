#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace plrev {

// Exit codes of `run`.
enum ExitCode : int {
  kExitVerdict = 0,      // computed result, including a No verdict
  kExitCertifyFail = 1,  // certify found a counterexample
  kExitInvalid = 2,      // parse or validation error
  kExitUnknown = 3,      // bounded search exhausted
};

// Runs one command. `args` excludes the program name. Map arguments are file
// paths, "-" for `in`, or an inline JSON document.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace plrev
