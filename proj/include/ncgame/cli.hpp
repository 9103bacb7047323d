#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ncgame::cli {

/// Exit codes beyond the 0/1/2 verdict codes.
inline constexpr int kExitUsage = 64;
inline constexpr int kExitVerifyFailed = 65;
inline constexpr int kExitInternal = 70;

/// Runs one invocation; args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ncgame::cli
