#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace netvis::cli {

enum ExitCode : int {
    kOk = 0,
    kFailure = 1,
    kUsage = 2,
    kIo = 3,
    kParse = 4,
    kInvalid = 5,
    kNumeric = 6,
    kTemplate = 7,
};

/// Runs one subcommand. `args` excludes the program name. Results go to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace netvis::cli
