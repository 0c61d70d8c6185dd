#pragma once

#include <ostream>

namespace pdem::cli {

inline constexpr const char* kVersion = "pdem 1.0.0";

enum ExitCode : int { kSuccess = 0, kVerificationFailed = 1, kUsageError = 2 };

// Entry point of the `pdem` tool; output goes to `out` unless --out is given.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pdem::cli
