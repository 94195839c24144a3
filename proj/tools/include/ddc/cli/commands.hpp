#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ddc::cli {

enum ExitCode : int {
    kSuccess = 0,
    kNegative = 1,
    kUsage = 2,
};

// Runs `ddc <subcommand> ...` with arguments after the program name.
// JSON reports go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace ddc::cli
