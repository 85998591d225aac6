#pragma once

#include <string>

#include "f2w/config.hpp"

namespace f2w {

// Experiment drivers behind the CLI subcommands. Every emitted file is a
// deterministic function of (config, seed). Returns the process exit code:
// 0 pass, 1 check failure (config errors throw ConfigError and map to 2).
int run_rate(const ExperimentConfig& cfg);
int run_reconstruct(const ExperimentConfig& cfg);
int run_compare(const ExperimentConfig& cfg);
int run_gramian_dump(const ExperimentConfig& cfg);

}  // namespace f2w
