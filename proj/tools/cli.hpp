#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace influx::cli {

enum ExitCode : int {
    kOk = 0,
    kUsageOrParse = 2,
    kNumericFailure = 3,
};

/// Runs the command line `args` (without the program name). Reports go to
/// `out` unless -o is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace influx::cli
