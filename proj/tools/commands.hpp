#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace soco::cli {

/// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  ///< selftest failure or unexpected error
inline constexpr int kExitConfig = 2;   ///< bad flags, config, instance or parameter
inline constexpr int kExitModel = 3;    ///< model violation (e.g. non-convex cost for AOBD)

/// Runs `advice-soco` with argv[1..] in `args`. Results go to `out` unless
/// --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace soco::cli
