#include "corrgt/cli.hpp"

#include <charconv>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "corrgt/analysis.hpp"
#include "corrgt/campaign.hpp"
#include "corrgt/config.hpp"
#include "corrgt/errors.hpp"
#include "corrgt/partition.hpp"
#include "corrgt/strategy.hpp"

namespace corrgt {

namespace {

std::uint64_t to_uint(const std::string& key, const std::string& value) {
  std::uint64_t x = 0;
  const auto* end = value.data() + value.size();
  const auto res = std::from_chars(value.data(), end, x);
  require(res.ec == std::errc{} && res.ptr == end, key + ": expected an integer, got '" + value + "'");
  return x;
}

double to_double(const std::string& key, const std::string& value) {
  double x = 0;
  const auto* end = value.data() + value.size();
  const auto res = std::from_chars(value.data(), end, x);
  require(res.ec == std::errc{} && res.ptr == end, key + ": expected a number, got '" + value + "'");
  return x;
}

}  // namespace

Graph parse_graph_argument(const std::string& arg) {
  const auto colon = arg.find(':');
  if (colon != std::string::npos) {
    Family family;
    try {
      family = parse_family(arg.substr(0, colon));
    } catch (const ValidationError&) {
      return read_edge_list_file(arg);
    }
    FamilySpec spec;
    spec.family = family;
    Seed seed = 0;
    std::stringstream ss(arg.substr(colon + 1));
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty()) continue;
      const auto eq = item.find('=');
      require(eq != std::string::npos, "graph parameter '" + item + "' must be key=value");
      const auto key = item.substr(0, eq);
      const auto value = item.substr(eq + 1);
      if (key == "n" || key == "nodes") spec.nodes = to_uint(key, value);
      else if (key == "side") spec.side = to_uint(key, value);
      else if (key == "d" || key == "degree") spec.degree = to_uint(key, value);
      else if (key == "g" || key == "clusters") spec.clusters = to_uint(key, value);
      else if (key == "q1" || key == "q_intra") spec.q_intra = to_double(key, value);
      else if (key == "q2" || key == "q_inter") spec.q_inter = to_double(key, value);
      else if (key == "seed") seed = to_uint(key, value);
      else throw ValidationError("unknown graph parameter '" + key + "'");
    }
    return build_graph(spec, seed);
  }
  return read_edge_list_file(arg);
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Group testing on edge-faulty graphs: simulation, partitions and bounds", "corrgt"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  int threads = -1;
  bool quiet = false;
  auto* simulate = app.add_subcommand("simulate", "Run a Monte Carlo campaign from a config file");
  simulate->add_option("config", config_path, "Config file (.json or sectioned text)")->required();
  simulate->add_option("--out", out_dir, "Output directory (overrides the config and CORRGT_OUTPUT_DIR)");
  simulate->add_option("--threads", threads, "Worker threads, 0 = all cores");
  simulate->add_flag("--quiet", quiet, "Do not print the summary to standard output");

  auto* bounds = app.add_subcommand("bounds", "Evaluate every closed-form bound for a config");
  bounds->add_option("config", config_path, "Config file")->required();

  std::string graph_arg;
  std::size_t l = 0;
  Seed seed = 0;
  std::string family_name;
  auto* partition = app.add_subcommand("partition", "Emit a partition as JSON");
  partition->add_option("graph", graph_arg, "Edge-list file or family:key=value,...")->required();
  partition->add_option("--l", l, "Group length (subgrid side for grids)")->required();
  partition->add_option("--seed", seed, "Representative seed");
  partition->add_option("--family", family_name, "cycle, tree or grid (default: from the graph)");

  double r = 0.0;
  auto* oracle = app.add_subcommand("oracle", "Exact expected component count by enumeration");
  oracle->add_option("graph", graph_arg, "Edge-list file or family:key=value,...")->required();
  oracle->add_option("--r", r, "Edge survival probability")->required();

  auto* analyze = app.add_subcommand("analyze", "Analysis-module values");
  analyze->require_subcommand(1);
  int d = 3;
  std::size_t t_max = 10;
  double tol = 1e-10;
  std::size_t n = 0;
  std::size_t side = 0;
  std::size_t k = 0;
  auto* pmf = analyze->add_subcommand("pmf", "Component-size pmf of the d-children tree process");
  pmf->add_option("--d", d, "Children per node (>= 2)");
  pmf->add_option("--r", r, "Edge survival probability")->required();
  pmf->add_option("--t", t_max, "Largest component size to print");
  auto* pinf = analyze->add_subcommand("pinf", "Probability of an infinite root component");
  pinf->add_option("--r", r, "Edge survival probability")->required();
  auto* ecs = analyze->add_subcommand("ecs", "Expected root component size (r < 1/3)");
  ecs->add_option("--r", r, "Edge survival probability")->required();
  ecs->add_option("--tol", tol, "Tail bound tolerance");
  auto* grid = analyze->add_subcommand("grid", "Grid component-count bound and connectivity recursion");
  grid->add_option("--r", r, "Edge survival probability")->required();
  grid->add_option("--n", n, "Node count");
  grid->add_option("--side", side, "Grid side (sets n = side^2)");
  grid->add_option("--k", k, "Subgrid side for the connectivity recursion");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*simulate) {
      auto cfg = load_config(config_path);
      if (!out_dir.empty()) cfg.output_dir = out_dir;
      if (threads >= 0) cfg.threads = static_cast<unsigned>(threads);
      const auto report = run_campaign(cfg);
      const auto path = write_campaign(report, cfg);
      err << "wrote " << path << '\n';
      if (!quiet) out << report.summary.dump(2) << '\n';
      return 0;
    }
    if (*bounds) {
      const auto cfg = load_config(config_path);
      const auto graph = build_config_graph(cfg.graph);
      nlohmann::json j = {{"node_count", graph.node_count()}, {"points", nlohmann::json::array()}};
      for (const auto rv : cfg.r_values)
        for (const auto pv : cfg.p_values)
          j["points"].push_back({{"r", rv}, {"p", pv}, {"bounds", evaluate_bounds(cfg, graph, rv, pv)}});
      if (j["points"].size() == 1) j.update(j["points"][0]["bounds"]);
      out << j.dump(2) << '\n';
      return 0;
    }
    if (*partition) {
      const auto graph = parse_graph_argument(graph_arg);
      const auto family = family_name.empty() ? default_partition_family(graph) : parse_partition_family(family_name);
      Partition part;
      switch (family) {
        case PartitionFamily::cycle: part = partition_cycle(graph, l, seed); break;
        case PartitionFamily::tree: part = partition_tree(graph, l, seed); break;
        case PartitionFamily::grid:
          require(graph.family().family == Family::grid, "grid partition requires a grid graph");
          part = partition_grid(graph.family().side, l, seed);
          break;
      }
      auto j = to_json(part);
      j["issues"] = partition_issues(part, &graph);
      out << j.dump(2) << '\n';
      return 0;
    }
    if (*oracle) {
      const auto graph = parse_graph_argument(graph_arg);
      const double value = exact_component_expectation(graph, r);
      out << nlohmann::json{{"nodes", graph.node_count()},
                            {"edges", graph.edge_count()},
                            {"r", r},
                            {"expected_components", value}}
                 .dump(2)
          << '\n';
      return 0;
    }
    if (*pmf) {
      require(d >= 2, "--d must be >= 2");
      nlohmann::json values = nlohmann::json::array();
      for (std::size_t t = 1; t <= t_max; ++t) values.push_back(analysis::component_pmf(d, r, t));
      out << nlohmann::json{{"d", d}, {"r", r}, {"pmf", values}}.dump(2) << '\n';
      return 0;
    }
    if (*pinf) {
      out << nlohmann::json{{"r", r}, {"p_infinity", analysis::p_infinity(r)}}.dump(2) << '\n';
      return 0;
    }
    if (*ecs) {
      const auto s = analysis::expected_component_size(r, tol);
      out << nlohmann::json{{"r", r},
                            {"value", s.value},
                            {"terms_used", s.terms_used},
                            {"tail_bound", s.tail_bound},
                            {"converged", s.converged}}
                 .dump(2)
          << '\n';
      return 0;
    }
    if (*grid) {
      if (side > 0) n = side * side;
      nlohmann::json j = {{"r", r}};
      if (n > 0) {
        j["n"] = n;
        if (r < 1.0 / 3.0) j["components_lower_bound"] = analysis::grid_components_lower_bound(n, r);
      }
      if (k > 0) {
        const auto c = analysis::grid_connectivity_lower(k, r);
        j["k"] = k;
        j["connectivity_lower"] = c.value;
        j["connectivity_exponent"] = c.exponent;
      }
      require(n > 0 || k > 0, "analyze grid needs --n, --side or --k");
      out << j.dump(2) << '\n';
      return 0;
    }
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << '\n';
    return 2;
  }
  return 1;
}

int run_cli(int argc, const char* const* argv) { return run_cli(argc, argv, std::cout, std::cerr); }

}  // namespace corrgt
