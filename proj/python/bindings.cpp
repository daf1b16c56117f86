#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "corrgt/analysis.hpp"
#include "corrgt/campaign.hpp"
#include "corrgt/classic.hpp"
#include "corrgt/config.hpp"
#include "corrgt/errors.hpp"
#include "corrgt/graph.hpp"
#include "corrgt/partition.hpp"
#include "corrgt/strategy.hpp"

namespace py = pybind11;
using namespace corrgt;

namespace {

py::object to_python(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

Graph make_graph(const std::string& family, std::size_t nodes, std::size_t side, std::size_t degree,
                 std::size_t clusters, double q_intra, double q_inter, Seed seed) {
  FamilySpec spec;
  spec.family = parse_family(family);
  spec.nodes = nodes;
  spec.side = side;
  spec.degree = degree;
  spec.clusters = clusters;
  spec.q_intra = q_intra;
  spec.q_inter = q_inter;
  return build_graph(spec, seed);
}

std::vector<std::pair<NodeId, NodeId>> edge_pairs(const Graph& g) {
  std::vector<std::pair<NodeId, NodeId>> out;
  out.reserve(g.edge_count());
  for (const auto& e : g.edges()) out.emplace_back(e.u, e.v);
  return out;
}

Graph graph_from_edges(std::size_t n, const std::vector<std::pair<NodeId, NodeId>>& pairs) {
  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  for (auto [u, v] : pairs) edges.push_back({u, v});
  return Graph(n, std::move(edges));
}

py::dict series(const analysis::SeriesResult& s) {
  py::dict d;
  d["value"] = s.value;
  d["terms_used"] = s.terms_used;
  d["tail_bound"] = s.tail_bound;
  d["converged"] = s.converged;
  return d;
}

}  // namespace

PYBIND11_MODULE(_corrgt, m) {
  m.doc() = "Group testing on edge-faulty graphs with component-correlated defects";

  auto base = py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<GenerationError>(m, "GenerationError", PyExc_RuntimeError);
  py::register_exception<TrialError>(m, "TrialError", PyExc_RuntimeError);
  (void)base;

  py::class_<Graph>(m, "Graph")
      .def(py::init(&graph_from_edges), py::arg("node_count"), py::arg("edges"))
      .def_property_readonly("node_count", &Graph::node_count)
      .def_property_readonly("edge_count", &Graph::edge_count)
      .def_property_readonly("family", [](const Graph& g) { return std::string(to_string(g.family().family)); })
      .def("edges", &edge_pairs)
      .def("component_count", &Graph::component_count)
      .def("is_tree", &Graph::is_tree)
      .def("__repr__", [](const Graph& g) {
        return "<Graph " + std::string(to_string(g.family().family)) + " n=" + std::to_string(g.node_count()) +
               " m=" + std::to_string(g.edge_count()) + ">";
      });

  m.def("build_graph", &make_graph, py::arg("family"), py::arg("nodes") = 0, py::arg("side") = 0,
        py::arg("degree") = 0, py::arg("clusters") = 0, py::arg("q_intra") = 1.0, py::arg("q_inter") = 0.0,
        py::arg("seed") = 0);
  m.def("realized_component_count",
        [](const Graph& g, double r, Seed seed) { return components(realize_edges(g, r, seed)).component_count; },
        py::arg("graph"), py::arg("r"), py::arg("seed"));
  m.def("exact_component_expectation", &exact_component_expectation, py::arg("graph"), py::arg("r"));

  m.def("binary_entropy", &analysis::binary_entropy, py::arg("p"));
  m.def("component_pmf", &analysis::component_pmf, py::arg("d"), py::arg("r"), py::arg("t"));
  m.def("p_infinity", &analysis::p_infinity, py::arg("r"));
  m.def("expected_component_size", [](double r, double tol) { return series(analysis::expected_component_size(r, tol)); },
        py::arg("r"), py::arg("tol") = 1e-12);
  m.def("grid_components_lower_bound", &analysis::grid_components_lower_bound, py::arg("n"), py::arg("r"),
        py::arg("tol") = 1e-12);
  m.def("azuma_deviation", &analysis::azuma_deviation, py::arg("m"), py::arg("delta"));
  m.def("grid_connectivity_lower", [](std::size_t k, double r) { return analysis::grid_connectivity_lower(k, r).value; },
        py::arg("k"), py::arg("r"));

  m.def("entropy_lower_bound", &entropy_lower_bound, py::arg("n"), py::arg("p"), py::arg("eps"));
  m.def("strong_error_lower_bound", &strong_error_lower_bound, py::arg("n"), py::arg("p"), py::arg("delta"),
        py::arg("eps"));
  m.def("star_lower_bound",
        [](std::size_t n, double r, double p, double delta, double eps) {
          return star_lower_bound(n, r, p, delta, eps).value;
        },
        py::arg("n"), py::arg("r"), py::arg("p"), py::arg("delta"), py::arg("eps"));

  m.def("group_length",
        [](const std::string& family, double eps, double r, std::size_t extent, double c_grid) {
          return group_length(parse_partition_family(family), eps, r, extent, c_grid);
        },
        py::arg("family"), py::arg("eps"), py::arg("r"), py::arg("extent"), py::arg("c_grid") = kDefaultGridConstant);
  m.def("partition",
        [](const Graph& g, std::size_t l, Seed seed, const std::string& family) {
          const auto kind = family.empty() ? default_partition_family(g) : parse_partition_family(family);
          Partition part;
          switch (kind) {
            case PartitionFamily::cycle: part = partition_cycle(g, l, seed); break;
            case PartitionFamily::tree: part = partition_tree(g, l, seed); break;
            case PartitionFamily::grid:
              require(g.family().family == Family::grid, "grid partition requires a grid graph");
              part = partition_grid(g.family().side, l, seed);
              break;
          }
          auto j = to_json(part);
          j["issues"] = partition_issues(part, &g);
          return to_python(j);
        },
        py::arg("graph"), py::arg("l"), py::arg("seed") = 0, py::arg("family") = "");

  m.def("sbm_regime",
        [](std::size_t n, std::size_t k, std::size_t g, double r1, double r2, double constant) {
          return std::string(to_string(sbm_classify(n, k, g, r1, r2, constant).regime));
        },
        py::arg("n"), py::arg("k"), py::arg("g"), py::arg("r1"), py::arg("r2"), py::arg("constant") = 100.0);

  m.def("run_campaign",
        [](const std::string& config_text) {
          const auto report = run_campaign(parse_config_text(config_text));
          return py::make_tuple(to_python(report.summary), report.csv);
        },
        py::arg("config_text"), "Run a campaign from sectioned config text; returns (summary, csv).");
  m.def("normalize_config", [](const std::string& text) { return to_config_text(parse_config_text(text)); },
        py::arg("config_text"));

  m.attr("__version__") = kVersion;
}
