#pragma once

#include <string>
#include <vector>

namespace soco::cli {

/// Applies a JSON config file named by `--config PATH` (or `--config=PATH`).
/// Each top-level key is the long name of an option of the chosen
/// subcommand ("beta-lo" or "beta_lo" both name --beta-lo). Keys whose
/// option already appears on the command line are ignored, which gives the
/// precedence flags > file > defaults. Arrays become repeated values,
/// `true` becomes a bare flag and `false`/null are dropped. The returned
/// argument list no longer contains --config. Throws ConfigError on an
/// unreadable file or a non-object document.
std::vector<std::string> merge_config(std::vector<std::string> args);

/// ADVICE_SOCO_JOBS when set (must be a positive integer), otherwise 1.
unsigned default_jobs();

}  // namespace soco::cli
