#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mdf {

enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 1,
  kExitParse = 2,
  kExitIo = 3,
  kExitUsage = 4,
};

/// Runs the `mdf` command line. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mdf
