#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ifsaddr::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitBudget = 3;

/// Runs one subcommand; args exclude the program name. Results go to out,
/// diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ifsaddr::cli
