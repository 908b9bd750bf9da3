#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "bdglab/stats.hpp"
#include "cli/config.hpp"

namespace bdglab::cli {

struct ExperimentInfo {
  std::string name;
  std::string description;
  bool monte_carlo;
};

// All experiment kinds, in emission order.
const std::vector<ExperimentInfo>& experiment_catalog();
const ExperimentInfo* find_experiment(std::string_view name);

struct RunOptions {
  // Monte Carlo replicate counts divided by 10 (never below 100).
  bool fast = false;
};

// Dispatches to the experiment named in the config. Throws ConfigError for
// an unknown kind or an invalid field value.
std::vector<RatioReport> run_experiment(const ExperimentConfig& cfg, const RunOptions& opts = {});

}  // namespace bdglab::cli
