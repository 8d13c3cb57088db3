#pragma once

#include <ostream>

#include "config.hpp"

namespace fracns::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitDiverged = 2;

/// Executes one command and writes its artifacts under config.output_dir.
/// Progress goes to `log` when it is non-null.
int run(const RunConfig& config, std::ostream* log);

/// Full command-line entry point: parses flags, builds the config, runs.
int cli_main(int argc, const char* const* argv);

}  // namespace fracns::cli
