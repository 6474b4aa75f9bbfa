#pragma once

#include <iosfwd>

namespace leachsim {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;  // bad flags, bad config, failed check
inline constexpr int kExitIo = 2;

/// Entry point for the `leachsim` tool: run, sweep, plot, check.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace leachsim
