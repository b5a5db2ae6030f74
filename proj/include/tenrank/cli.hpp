#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tenrank {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
    exit_ok = 0,
    exit_usage = 1,
    exit_format = 2,
    exit_numerical = 3,
};

/// Runs the `tenrank` command line. `args` excludes the program name.
/// The TENRANK_TOL environment variable supplies a default rank tolerance;
/// an explicit --tol wins.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tenrank
