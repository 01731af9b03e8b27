#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kpl::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitComputation = 1;
inline constexpr int kExitUsage = 2;

/// Entry point of the `kpl` tool. args[0] is the program name. CSV goes to
/// `out` (or to --out), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kpl::cli
