#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bootperc::cli {

/// Process exit codes.
enum ExitCode : int {
    ok = 0,
    negative = 1, ///< a well-formed check came out false
    usage = 2,    ///< bad arguments or input files
    resource = 3, ///< search budget exceeded
    internal = 4, ///< an internal consistency check failed
};

/// Runs the command line `args` (without the program name), writing results
/// to `out` and diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace bootperc::cli
