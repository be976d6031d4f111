#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace topoemo::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kInputError = 2,
  kPartialFailure = 3,  // extract: some videos failed, the rest were written
  kInternalError = 4,
};

/// Runs the `topoemo` command line. `args` excludes the program name.
/// Subcommands: synth, extract, train, eval, predict, inspect.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace topoemo::cli
