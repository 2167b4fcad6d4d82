// Config-driven experiment runner: dispatches to the analysis and solver
// modules, writes report.json plus per-run CSVs.

#pragma once

#include <filesystem>

#include <json.hpp>

#include "dispfd/config.hpp"

namespace dispfd {

struct RunnerOptions {
  std::filesystem::path out_dir = ".";
  int jobs = 1;
};

// Runs the experiment named by cfg key "kind" (resolve | optimize | solve1d
// | varcoef | hopf | solve2d | ibvp | deltak | sweep). Throws ConfigError
// for invalid configs, std::runtime_error for runtime failures.
nlohmann::json run_experiment(const Config& cfg, const RunnerOptions& opt);

}  // namespace dispfd
