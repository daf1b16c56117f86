#pragma once

#include <string>

#include <json.hpp>

#include "corrgt/config.hpp"
#include "corrgt/graph.hpp"

namespace corrgt {

inline constexpr const char* kCampaignCsvSchema = "corrgt.campaign/1";
inline constexpr const char* kSummarySchema = "corrgt.summary/1";
inline constexpr const char* kVersion = "0.1.0";

struct CampaignReport {
  nlohmann::json summary;
  std::string csv;  // one row per (point, trial)
};

/// Closed-form bounds at one (r, p) point of a config.
nlohmann::json evaluate_bounds(const ExperimentConfig& cfg, const Graph& graph, double r, double p);

/// Runs every (r, p) point for cfg.trials trials. Strategies are resolved
/// for all points before the first trial, so invalid parameters fail early
/// with ValidationError. A point that fails at run time is recorded with its
/// error and the campaign moves on.
CampaignReport run_campaign(const ExperimentConfig& cfg);

/// Writes <dir>/<name>.json and <dir>/<name>.csv; returns the JSON path.
std::string write_campaign(const CampaignReport& report, const ExperimentConfig& cfg);

}  // namespace corrgt
