#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bdglab/gauge.hpp"
#include "bdglab/paths.hpp"

namespace bdglab::cli {

// Thrown for malformed configs; the message names the offending field.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// One experiment run. Every field except `experiment` is optional; absent
// fields take the experiment's defaults, so a parsed config serializes back
// to exactly the fields it was given.
struct ExperimentConfig {
  std::string experiment;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> replicates;

  // grid
  std::optional<double> horizon;
  std::optional<std::size_t> n;
  std::optional<std::size_t> refine;
  std::optional<std::size_t> d;

  std::optional<StoppingTimeSpec> stop;
  std::optional<GaugeSpec> lambda;
  std::optional<GaugeSpec> phi;
  std::optional<std::vector<double>> weights;

  // Named sweep lists: betas, deltas, lambdas, horizons, scales, p, m.
  std::map<std::string, std::vector<double>> sweeps;

  std::optional<std::string> martingale;
  std::optional<std::vector<std::string>> integrands;
  std::optional<std::string> pair;
  std::optional<std::string> metric;
  std::optional<std::size_t> blocks;
  std::optional<double> q;
  std::optional<double> kappa;
  std::optional<double> audit_level;
  std::optional<double> stability_factor;
  std::optional<double> refinement_tolerance;

  std::optional<std::string> output;

  bool operator==(const ExperimentConfig&) const = default;
};

ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);
// Pretty JSON, keys in a fixed order.
std::string serialize_config(const ExperimentConfig& cfg);

GaugeSpec parse_gauge_spec(const std::string& json_text, const std::string& field = "gauge");

}  // namespace bdglab::cli
