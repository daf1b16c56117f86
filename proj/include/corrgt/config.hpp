#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "corrgt/graph.hpp"
#include "corrgt/strategy.hpp"

namespace corrgt {

enum class ErrorCriterion { average, maximum };

struct GraphConfig {
  FamilySpec spec{Family::cycle, 100};
  std::string file;       // custom edge list; overrides spec when set
  Seed seed = 0;          // base-graph seed for random families
  bool resample = true;   // random families: draw a fresh base graph per trial

  bool operator==(const GraphConfig&) const = default;
};

struct BoundsConfig {
  bool entropy = true;
  bool strong_error = true;
  bool star = true;
  bool components = true;

  bool operator==(const BoundsConfig&) const = default;
};

/// Everything a campaign needs. Validated as a whole before any trial runs.
struct ExperimentConfig {
  GraphConfig graph;
  std::vector<double> r_values{0.9};
  std::vector<double> p_values{0.1};
  StrategySpec strategy;
  ErrorCriterion criterion = ErrorCriterion::average;
  double eps = 0.2;
  double delta = 0.05;  // used under the maximum criterion
  std::size_t trials = 100;
  Seed seed = 1;
  unsigned threads = 0;  // 0 = all cores
  BoundsConfig bounds;
  std::string output_dir = "corrgt-out";
  std::string output_name = "report";

  /// Strategy spec with eps/delta from the error section folded in.
  StrategySpec effective_strategy() const;
  void validate() const;

  bool operator==(const ExperimentConfig&) const = default;
};

/// Sectioned key-value text:
///
///   # comment
///   [graph]
///   family = cycle
///   nodes = 1000
///   [model]
///   r = 0.9, 0.99
///
/// Unknown sections or keys are rejected.
ExperimentConfig parse_config_text(const std::string& text);
std::string to_config_text(const ExperimentConfig& cfg);

nlohmann::json to_json(const ExperimentConfig& cfg);
ExperimentConfig config_from_json(const nlohmann::json& j);

/// Reads a config file; `.json` files are parsed as JSON, anything else as
/// sectioned text. The CORRGT_OUTPUT_DIR environment variable, when set,
/// replaces output.dir.
ExperimentConfig load_config(const std::string& path);

/// Builds the base graph described by the config (reads the edge list for
/// custom graphs).
Graph build_config_graph(const GraphConfig& graph);

/// Whether the family draws its base graph at random.
bool is_random_family(Family family);

}  // namespace corrgt
