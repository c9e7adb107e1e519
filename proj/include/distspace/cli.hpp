#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace distspace::cli {

/// Exit codes shared by all subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNegative = 2;  ///< not realizable, FAIL, no reconstruction
inline constexpr int kExitBudget = 3;

/// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace distspace::cli
