#pragma once

#include <iosfwd>

namespace ccdm::cli {

// Exit codes shared by every subcommand.
inline constexpr int exit_ok = 0;
inline constexpr int exit_io = 1;        // unreadable/unwritable files
inline constexpr int exit_usage = 2;     // bad flags, malformed inputs
inline constexpr int exit_integrity = 3; // decode rejected a block

// Runs the full command line (argv[0] is the program name) against the
// given streams and returns the exit code. main() is a thin wrapper.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace ccdm::cli
