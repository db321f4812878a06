#pragma once

#include <iosfwd>

namespace ecmgal::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitCompute = 3;

/// Parses argv, runs one subcommand and writes its report to `out`; diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ecmgal::cli
