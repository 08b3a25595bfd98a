#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace steiner_ladder::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitSize = 3;
inline constexpr int kExitCondition = 4;

/// Runs one subcommand. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv);

}  // namespace steiner_ladder::cli
