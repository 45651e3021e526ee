#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace oscspec::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitOracle = 3;
inline constexpr int kExitQuadrature = 4;
inline constexpr int kExitVerification = 5;

/// Runs one command line (without the program name). Subcommands: spectrum, contour,
/// verify, sweep.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace oscspec::cli
