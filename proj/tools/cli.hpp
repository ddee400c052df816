#pragma once

// The cylwave command line: simulate, resolvent and spectrum subcommands.
// Each run writes into a fresh timestamped directory under --out; the
// manifest and the resolved configuration are written before any
// computation starts.
//
// Exit codes: 0 success, 2 acceptance threshold not met, 1 error.

#include <ostream>
#include <string>
#include <vector>

namespace cylwave::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitThreshold = 2;

inline constexpr const char* kToolVersion = "cylwave 0.1.0";

/// Eigenvalues with |max Re| <= this are reported as conservative.
inline constexpr double kConservativeTolerance = 1e-10;

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cylwave::cli
