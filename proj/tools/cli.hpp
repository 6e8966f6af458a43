#ifndef THINLOOP_TOOLS_CLI_HPP
#define THINLOOP_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace thinloop::cli {

enum ExitCode : int {
    kOk = 0,
    kFalse = 1,      // a check ran and came out false
    kInputError = 2, // unreadable input, bad flags, guard violations
};

/// Runs one command. args excludes the program name. The structured result
/// goes to out (or to --out), diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace thinloop::cli

#endif
