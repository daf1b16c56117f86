#include "corrgt/campaign.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "corrgt/analysis.hpp"
#include "corrgt/classic.hpp"
#include "corrgt/errors.hpp"
#include "corrgt/state.hpp"
#include "corrgt/strategy.hpp"

namespace corrgt {

namespace {

std::string num(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

struct ExpectedComponents {
  double value = 0.0;
  std::string source;
};

std::optional<ExpectedComponents> expected_components(const Graph& graph, double r) {
  const auto n = graph.node_count();
  switch (graph.family().family) {
    case Family::cycle:
      return ExpectedComponents{analysis::line_expectation(analysis::LineFamily::cycle, n, r), "(1-r)n"};
    case Family::path:
    case Family::star:
    case Family::tree:
      return ExpectedComponents{analysis::line_expectation(analysis::LineFamily::tree, n, r), "1+(1-r)(n-1)"};
    case Family::grid:
      if (r < 1.0 / 3.0)
        return ExpectedComponents{analysis::grid_components_lower_bound(n, r), "n/E|C(v)| (lower bound)"};
      break;
    default:
      break;
  }
  if (graph.edge_count() <= kEnumerationEdgeBudget)
    return ExpectedComponents{exact_component_expectation(graph, r), "exact enumeration"};
  return std::nullopt;
}

nlohmann::json improvement(const nlohmann::json& params, const ExperimentConfig& cfg, std::size_t n, double r) {
  nlohmann::json j;
  if (!params.contains("groups")) return j;
  const auto groups = params["groups"].get<double>();
  j["groups"] = groups;
  j["ratio"] = static_cast<double>(n) / groups;
  if (!(r > 0.0 && r < 1.0) || cfg.eps <= 0.0) return j;
  const auto family = params["partition"].get<std::string>();
  const double log_inv_r = std::log(1.0 / r);
  const double nd = static_cast<double>(n);
  if (family == "grid") {
    const double slack = params["grid_slack"].get<double>();
    j["asymptotic_factor"] = (1.0 - r) * log_inv_r;
    j["predicted_groups"] = nd * cfg.strategy.c_grid * (1.0 - r) * log_inv_r / -std::log1p(-slack);
  } else {
    const double denom = family == "tree" ? 2.0 : 1.0;
    j["asymptotic_factor"] = log_inv_r;
    j["predicted_groups"] = nd * denom * log_inv_r / -std::log1p(-cfg.eps / 2.0);
  }
  return j;
}

}  // namespace

nlohmann::json evaluate_bounds(const ExperimentConfig& cfg, const Graph& graph, double r, double p) {
  const auto n = graph.node_count();
  const bool maximum = cfg.criterion == ErrorCriterion::maximum;
  const double delta = maximum ? cfg.delta : 0.0;
  nlohmann::json j = nlohmann::json::object();
  if (cfg.bounds.entropy) j["entropy_lower_bound"] = entropy_lower_bound(n, p, cfg.eps);
  if (cfg.bounds.strong_error && maximum) j["strong_error_lower_bound"] = strong_error_lower_bound(n, p, delta, cfg.eps);
  if (cfg.bounds.star && graph.family().family == Family::star) {
    const auto s = star_lower_bound(n, r, p, delta, cfg.eps);
    j["star_lower_bound"] = {{"value", s.value}, {"unclamped", s.unclamped}, {"r_prime", s.r_prime}};
  }
  if (cfg.bounds.components) {
    if (const auto ec = expected_components(graph, r)) {
      j["expected_components"] = {{"value", ec->value}, {"source", ec->source}};
      j["component_entropy_bound"] = (1.0 - cfg.eps) * ec->value * analysis::binary_entropy(p);
      if (maximum) j["component_strong_bound"] = component_scaled_strong_bound(ec->value, p, delta, cfg.eps);
    }
    if (n >= 1 && graph.edge_count() >= 1) j["azuma_deviation_95"] = analysis::azuma_deviation(graph.edge_count(), 0.05);
  }
  return j;
}

CampaignReport run_campaign(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto spec = cfg.effective_strategy();
  const Graph base = build_config_graph(cfg.graph);
  const bool resample = cfg.graph.file.empty() && cfg.graph.resample && is_random_family(cfg.graph.spec.family);

  struct Point {
    double r;
    double p;
    ResolvedStrategy strategy;
  };
  std::vector<Point> points;
  for (const auto r : cfg.r_values)
    for (const auto p : cfg.p_values) points.push_back({r, p, resolve_strategy(spec, base, r, p)});

  auto embedded = to_json(cfg);
  embedded.erase("output");
  CampaignReport report;
  report.summary = {{"schema", kSummarySchema},
                    {"version", kVersion},
                    {"config", embedded},
                    {"graph",
                     {{"family", std::string(to_string(base.family().family))},
                      {"nodes", base.node_count()},
                      {"edges", base.edge_count()},
                      {"resampled_per_trial", resample}}},
                    {"trials", cfg.trials},
                    {"points", nlohmann::json::array()}};

  std::ostringstream csv;
  csv << "# schema: " << kCampaignCsvSchema << '\n';
  csv << "point,r,p,trial,seed,components,tests,err,err_le_eps\n";
  if (cfg.trials == 0) {
    report.summary["empty"] = true;
    report.csv = csv.str();
    return report;
  }

  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& pt = points[i];
    nlohmann::json entry = {{"index", i},
                            {"r", pt.r},
                            {"p", pt.p},
                            {"params", pt.strategy.params},
                            {"bounds", evaluate_bounds(cfg, base, pt.r, pt.p)},
                            {"improvement", improvement(pt.strategy.params, cfg, base.node_count(), pt.r)}};
    MonteCarloParams mc{pt.r, pt.p, cfg.trials, cfg.eps, cfg.seed, cfg.threads};
    try {
      ErrorReport er;
      if (resample) {
        const auto family = cfg.graph.spec;
        er = monte_carlo_error([family](Seed s) { return build_graph(family, s); }, mc, pt.strategy.run);
      } else {
        er = monte_carlo_error(base, mc, pt.strategy.run);
      }
      entry["results"] = to_json(er);
      if (entry["bounds"].contains("entropy_lower_bound"))
        entry["results"]["tests_vs_entropy_bound"] =
            er.mean_tests / std::max(1e-300, entry["bounds"]["entropy_lower_bound"].get<double>());
      for (const auto& rec : er.records)
        csv << i << ',' << num(pt.r) << ',' << num(pt.p) << ',' << rec.trial << ',' << rec.seed << ',' << rec.components
            << ',' << rec.tests << ',' << rec.err << ',' << (rec.err_le_eps ? 1 : 0) << '\n';
    } catch (const std::exception& e) {
      entry["error"] = e.what();
    }
    report.summary["points"].push_back(std::move(entry));
  }
  report.csv = csv.str();
  return report;
}

std::string write_campaign(const CampaignReport& report, const ExperimentConfig& cfg) {
  const std::filesystem::path dir(cfg.output_dir);
  std::filesystem::create_directories(dir);
  const auto json_path = dir / (cfg.output_name + ".json");
  const auto csv_path = dir / (cfg.output_name + ".csv");
  {
    std::ofstream out(json_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + json_path.string());
    out << report.summary.dump(2) << '\n';
  }
  {
    std::ofstream out(csv_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + csv_path.string());
    out << report.csv;
  }
  return json_path.string();
}

}  // namespace corrgt
