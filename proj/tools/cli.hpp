#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace submod::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitExpectation = 1;  // a promised property did not hold
inline constexpr int kExitUsage = 2;        // bad flags, bad specs, unreadable input

/// Runs one subcommand. `args` excludes the program name.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace submod::cli
