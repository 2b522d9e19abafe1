#pragma once

#include <iosfwd>

namespace avtest::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitSession = 3;

// Entry point of the `avtest` tool. Writes results to `out` and diagnostics
// to `err`; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace avtest::cli
