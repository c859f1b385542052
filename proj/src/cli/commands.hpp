#pragma once

#include <string>

#include "cli/run_config.hpp"

namespace spinctl::cli {

// Each command validates the sections it needs, computes, and writes its
// report (JSON, config embedded) plus tabular exports into
// cfg.output_dir. Configuration gaps raise ConfigError (exit 2); numerical
// failures raise other exceptions (exit 3).
void cmd_optimize(const RunConfig& cfg, int threads);
void cmd_min_time(const RunConfig& cfg, int threads);
void cmd_sensitivity(const RunConfig& cfg, int threads);
void cmd_spectrum(const RunConfig& cfg, int threads);
void cmd_filter(const RunConfig& cfg, int threads);
void cmd_iterate_filter(const RunConfig& cfg, int threads);
void cmd_lie_dim(const RunConfig& cfg, int threads);

// Dispatch by subcommand name; returns a process exit code.
int run_command(const std::string& name, const std::string& config_path,
                const std::optional<std::uint64_t>& seed_override,
                const std::optional<std::string>& out_override, int threads);

} // namespace spinctl::cli
