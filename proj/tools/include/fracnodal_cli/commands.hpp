#pragma once

#include "fracnodal_cli/run_config.hpp"

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace fracnodal::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_config_error = 2,
    exit_not_converged = 3,
    exit_hypothesis_violation = 4,
};

inline const std::vector<std::string_view> kCommands = {"assemble",   "validate",   "solve-ground",
                                                        "solve-nodal", "multistart", "degree-check"};

/// Runs one subcommand on a validated configuration, writing files into config.output_dir and a
/// short human-readable summary to `log`.
int run(std::string_view command, const RunConfig& config, std::ostream& log);

/// Full command line handling: `fracnodal <command> [--config file] [--key value ...]`.
/// Problems with the configuration are reported on `err` and yield exit_config_error.
int main_entry(int argc, const char* const* argv, std::ostream& log, std::ostream& err);

}  // namespace fracnodal::cli
