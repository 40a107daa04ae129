#pragma once

#include <iosfwd>

namespace multcount {

/// Exit statuses of the command-line front end.
enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitViolation = 2 };

/// Parses argv (argv[0] is the program name), runs one subcommand and writes
/// its report to `out`; diagnostics go to `err`.
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace multcount
