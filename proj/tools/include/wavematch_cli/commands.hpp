#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wavematch::cli {

/// Environment variable holding the worker count for surface evaluation.
inline constexpr const char* kWorkersEnv = "WAVEMATCH_WORKERS";

/// Worker count from the environment, defaulting to the hardware concurrency.
int workers_from_env();

/// Runs the command line (without the program name). Returns the exit status;
/// status 0 means every requested artifact was written.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

} // namespace wavematch::cli
