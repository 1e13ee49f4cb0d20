#pragma once

#include <iosfwd>

namespace co2dist::cli {

// Parses the command line and runs one subcommand. Returns the exit code:
// 0 on success, 1 on a command error, 2 on a usage error.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace co2dist::cli
