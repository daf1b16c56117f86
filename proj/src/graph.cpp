#include "corrgt/graph.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "corrgt/detail/union_find.hpp"
#include "corrgt/errors.hpp"

namespace corrgt {
namespace {

constexpr std::array<std::pair<Family, std::string_view>, 8> kFamilyNames{{
    {Family::cycle, "cycle"},
    {Family::path, "path"},
    {Family::star, "star"},
    {Family::tree, "tree"},
    {Family::grid, "grid"},
    {Family::d_regular, "d_regular"},
    {Family::sbm, "sbm"},
    {Family::custom, "custom"},
}};

std::size_t isqrt(std::size_t n) {
  auto s = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
  while (s * s > n) --s;
  while ((s + 1) * (s + 1) <= n) ++s;
  return s;
}

void check_family_invariants(const Graph& g) {
  const auto& f = g.family();
  const auto n = g.node_count();
  const auto m = g.edge_count();
  const std::string name(to_string(f.family));
  switch (f.family) {
    case Family::cycle:
      require(m == n, "cycle requires m == n");
      for (NodeId v = 0; v < n; ++v) require(g.degree(v) == 2, "cycle requires every degree == 2");
      require(g.is_connected(), "cycle must be connected");
      break;
    case Family::path:
    case Family::star:
    case Family::tree:
      require(m + 1 == n, name + " requires m == n - 1");
      require(g.is_connected(), name + " must be connected");
      break;
    case Family::grid: {
      const auto side = isqrt(n);
      require(side * side == n, "grid requires n to be a perfect square");
      require(m == 2 * side * (side - 1), "grid requires m == 2*side*(side-1)");
      break;
    }
    case Family::d_regular:
      for (NodeId v = 0; v < n; ++v)
        require(g.degree(v) == f.degree, "d_regular requires every degree == d");
      break;
    case Family::sbm:
      require(f.clusters >= 1 && n % f.clusters == 0, "sbm requires g * k == n");
      break;
    case Family::custom:
      break;
  }
}

// Calls fn(index) for each index in [0, count) selected independently with
// probability q, using geometric skips.
template <typename Fn>
void for_each_bernoulli_index(std::uint64_t count, double q, Rng& rng, Fn&& fn) {
  if (q <= 0.0 || count == 0) return;
  if (q >= 1.0) {
    for (std::uint64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  const double log_miss = std::log1p(-q);
  std::uint64_t pos = 0;
  while (pos < count) {
    const double u = 1.0 - uniform01(rng);  // (0, 1]
    const double skip = std::floor(std::log(u) / log_miss);
    if (skip >= static_cast<double>(count - pos)) return;
    pos += static_cast<std::uint64_t>(skip);
    fn(pos);
    ++pos;
  }
}

std::vector<Edge> cycle_edges(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
  e.push_back({0, static_cast<NodeId>(n - 1)});
  return e;
}

std::vector<Edge> prufer_tree(std::size_t n, Rng& rng) {
  std::vector<Edge> edges;
  if (n == 2) edges.push_back({0, 1});
  if (n <= 2) return edges;
  std::vector<NodeId> code(n - 2);
  for (auto& c : code) c = static_cast<NodeId>(uniform_index(rng, n));
  std::vector<std::size_t> degree(n, 1);
  for (auto c : code) ++degree[c];
  // Linear-time decoding: `leaf` is the smallest current leaf.
  NodeId ptr = 0;
  while (degree[ptr] != 1) ++ptr;
  NodeId leaf = ptr;
  for (auto c : code) {
    edges.push_back({std::min(leaf, c), std::max(leaf, c)});
    if (--degree[c] == 1 && c < ptr) {
      leaf = c;
    } else {
      ++ptr;
      while (degree[ptr] != 1) ++ptr;
      leaf = ptr;
    }
  }
  edges.push_back({leaf, static_cast<NodeId>(n - 1)});
  return edges;
}

std::vector<Edge> pairing_model(std::size_t n, std::size_t d, Rng& rng) {
  constexpr int kMaxAttempts = 100;
  std::vector<NodeId> stubs;
  stubs.reserve(n * d);
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    stubs.clear();
    for (NodeId v = 0; v < n; ++v)
      for (std::size_t i = 0; i < d; ++i) stubs.push_back(v);
    shuffle(stubs.begin(), stubs.end(), rng);
    std::vector<Edge> edges;
    edges.reserve(stubs.size() / 2);
    bool ok = true;
    for (std::size_t i = 0; i < stubs.size(); i += 2) {
      const NodeId a = stubs[i], b = stubs[i + 1];
      if (a == b) {
        ok = false;
        break;
      }
      edges.push_back({std::min(a, b), std::max(a, b)});
    }
    if (!ok) continue;
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) continue;
    return edges;
  }
  throw GenerationError("d_regular pairing model produced self-loops or multi-edges in " +
                        std::to_string(kMaxAttempts) + " attempts");
}

std::vector<Edge> sbm_edges(const FamilySpec& spec, Rng& rng) {
  const std::size_t k = spec.cluster_size();
  const std::size_t g = spec.clusters;
  std::vector<Edge> edges;
  for (std::size_t c = 0; c < g; ++c) {
    const auto base = static_cast<NodeId>(c * k);
    // Pairs i<j inside the cluster, enumerated row by row.
    std::uint64_t row = 0, row_start = 0;
    for_each_bernoulli_index(static_cast<std::uint64_t>(k) * (k - 1) / 2, spec.q_intra, rng,
                             [&](std::uint64_t idx) {
                               while (idx >= row_start + (k - 1 - row)) {
                                 row_start += k - 1 - row;
                                 ++row;
                               }
                               const auto col = row + 1 + (idx - row_start);
                               edges.push_back({static_cast<NodeId>(base + row), static_cast<NodeId>(base + col)});
                             });
  }
  for (std::size_t a = 0; a < g; ++a) {
    for (std::size_t b = a + 1; b < g; ++b) {
      for_each_bernoulli_index(static_cast<std::uint64_t>(k) * k, spec.q_inter, rng, [&](std::uint64_t idx) {
        edges.push_back({static_cast<NodeId>(a * k + idx / k), static_cast<NodeId>(b * k + idx % k)});
      });
    }
  }
  return edges;
}

}  // namespace

std::string_view to_string(Family family) {
  for (const auto& [f, name] : kFamilyNames)
    if (f == family) return name;
  return "custom";
}

Family parse_family(std::string_view name) {
  for (const auto& [f, n] : kFamilyNames)
    if (n == name) return f;
  if (name == "d-regular" || name == "regular") return Family::d_regular;
  throw ValidationError("unknown graph family '" + std::string(name) + "'");
}

std::size_t FamilySpec::node_count() const { return family == Family::grid ? side * side : nodes; }

std::size_t FamilySpec::cluster_size() const { return clusters == 0 ? 0 : nodes / clusters; }

void FamilySpec::validate() const {
  switch (family) {
    case Family::cycle:
      require(nodes >= 3, "cycle requires n >= 3");
      break;
    case Family::path:
    case Family::star:
    case Family::tree:
      require(nodes >= 1, std::string(to_string(family)) + " requires n >= 1");
      break;
    case Family::grid:
      require(side >= 2, "grid requires side >= 2");
      break;
    case Family::d_regular:
      require(nodes >= 1, "d_regular requires n >= 1");
      require(degree < nodes, "d_regular requires d < n");
      require((degree * nodes) % 2 == 0, "d_regular requires d*n even");
      break;
    case Family::sbm:
      require(nodes >= 1, "sbm requires n >= 1");
      require(clusters >= 1 && nodes % clusters == 0, "sbm requires g * k == n");
      require_probability(q_intra, "q1");
      require_probability(q_inter, "q2");
      break;
    case Family::custom:
      throw ValidationError("custom graphs are read from an edge list, not built");
  }
}

Graph::Graph(std::size_t node_count, std::vector<Edge> edges, FamilySpec family)
    : node_count_(node_count), edges_(std::move(edges)), family_(family) {
  require(node_count_ >= 1, "graph requires n >= 1");
  require(node_count_ <= std::numeric_limits<NodeId>::max(), "node count exceeds NodeId range");
  for (auto& e : edges_) {
    require(e.u < node_count_ && e.v < node_count_, "node ids must lie in [0, n)");
    require(e.u != e.v, "self-loops are not allowed");
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges_.begin(), edges_.end());
  require(std::adjacent_find(edges_.begin(), edges_.end()) == edges_.end(), "duplicate edges are not allowed");
  if (family_.family != Family::grid) family_.nodes = node_count_;

  offsets_.assign(node_count_ + 1, 0);
  for (const auto& e : edges_) {
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
  }
  for (std::size_t i = 0; i < node_count_; ++i) offsets_[i + 1] += offsets_[i];
  adjacency_.resize(2 * edges_.size());
  auto cursor = offsets_;
  for (std::uint32_t i = 0; i < edges_.size(); ++i) {
    const auto& e = edges_[i];
    adjacency_[cursor[e.u]++] = {e.v, i};
    adjacency_[cursor[e.v]++] = {e.u, i};
  }
  check_family_invariants(*this);
}

std::span<const Incidence> Graph::incidences(NodeId v) const {
  return std::span<const Incidence>(adjacency_).subspan(offsets_[v], offsets_[v + 1] - offsets_[v]);
}

std::size_t Graph::degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }

std::size_t Graph::component_count() const { return components(*this).component_count; }

Graph build_graph(const FamilySpec& spec, Seed seed) {
  spec.validate();
  const std::size_t n = spec.node_count();
  auto rng = make_rng(seed);
  std::vector<Edge> edges;
  switch (spec.family) {
    case Family::cycle:
      edges = cycle_edges(n);
      break;
    case Family::path:
      for (NodeId i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
      break;
    case Family::star:
      for (NodeId i = 1; i < n; ++i) edges.push_back({0, i});
      break;
    case Family::tree:
      edges = prufer_tree(n, rng);
      break;
    case Family::grid:
      for (std::size_t row = 0; row < spec.side; ++row) {
        for (std::size_t col = 0; col < spec.side; ++col) {
          const auto v = static_cast<NodeId>(row * spec.side + col);
          if (col + 1 < spec.side) edges.push_back({v, v + 1});
          if (row + 1 < spec.side) edges.push_back({v, static_cast<NodeId>(v + spec.side)});
        }
      }
      break;
    case Family::d_regular:
      edges = pairing_model(n, spec.degree, rng);
      break;
    case Family::sbm:
      edges = sbm_edges(spec, rng);
      break;
    case Family::custom:
      break;
  }
  return Graph(n, std::move(edges), spec);
}

Graph read_edge_list(std::istream& in) {
  std::string line;
  auto next_line = [&](const char* what) {
    while (std::getline(in, line)) {
      const auto pos = line.find_first_not_of(" \t\r");
      if (pos != std::string::npos && line[pos] != '#') return;
    }
    throw ValidationError(std::string("edge list ended before ") + what);
  };
  next_line("the header");
  long long n = -1, m = -1;
  {
    std::istringstream header(line);
    if (!(header >> n >> m) || n < 1 || m < 0) throw ValidationError("edge list header must be 'n m' with n >= 1, m >= 0");
  }
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    next_line("all m edges were read");
    std::istringstream row(line);
    long long u = -1, v = -1;
    if (!(row >> u >> v) || u < 0 || v < 0 || u >= n || v >= n)
      throw ValidationError("edge line " + std::to_string(i + 1) + " must be 'u v' with ids in [0, n)");
    edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v)});
  }
  return Graph(static_cast<std::size_t>(n), std::move(edges));
}

Graph read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open edge list '" + path + "'");
  return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& graph) {
  out << graph.node_count() << ' ' << graph.edge_count() << '\n';
  for (const auto& e : graph.edges()) out << e.u << ' ' << e.v << '\n';
}

RealizedGraph::RealizedGraph(const Graph& base, std::vector<std::uint8_t> survival_mask, double survival_prob,
                             Seed seed)
    : base_(&base), mask_(std::move(survival_mask)), survival_prob_(survival_prob), seed_(seed) {
  require(mask_.size() == base.edge_count(), "survival mask length must equal the base edge count");
  require_probability(survival_prob_, "r");
  surviving_ = static_cast<std::size_t>(std::count_if(mask_.begin(), mask_.end(), [](auto b) { return b != 0; }));
}

double RealizedGraph::probability() const {
  const auto m = mask_.size();
  return std::pow(survival_prob_, static_cast<double>(surviving_)) *
         std::pow(1.0 - survival_prob_, static_cast<double>(m - surviving_));
}

RealizedGraph realize_edges(const Graph& graph, double r, Seed seed) {
  require_probability(r, "r");
  auto rng = make_rng(seed);
  std::vector<std::uint8_t> mask(graph.edge_count());
  for (auto& bit : mask) bit = bernoulli(rng, r) ? 1 : 0;
  return RealizedGraph(graph, std::move(mask), r, seed);
}

namespace {

template <typename Keep>
ComponentLabeling label_components(const Graph& g, Keep keep) {
  const auto n = g.node_count();
  detail::UnionFind uf(n);
  const auto edges = g.edges();
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (keep(i)) uf.unite(edges[i].u, edges[i].v);
  ComponentLabeling out;
  out.label.assign(n, 0);
  std::vector<std::uint32_t> root_label(n, UINT32_MAX);
  for (NodeId v = 0; v < n; ++v) {
    const auto root = uf.find(v);
    if (root_label[root] == UINT32_MAX) {
      root_label[root] = static_cast<std::uint32_t>(out.sizes.size());
      out.sizes.push_back(0);
    }
    out.label[v] = root_label[root];
    ++out.sizes[root_label[root]];
  }
  out.component_count = out.sizes.size();
  return out;
}

}  // namespace

ComponentLabeling components(const RealizedGraph& realized) {
  const auto mask = realized.survival_mask();
  return label_components(realized.base(), [&](std::size_t i) { return mask[i] != 0; });
}

ComponentLabeling components(const Graph& graph) {
  return label_components(graph, [](std::size_t) { return true; });
}

double exact_component_expectation(const Graph& graph, double r) {
  require_probability(r, "r");
  const auto m = graph.edge_count();
  if (m > kEnumerationEdgeBudget)
    throw BudgetError("exact enumeration needs m <= " + std::to_string(kEnumerationEdgeBudget) + " edges, got " +
                      std::to_string(m) + "; use Monte Carlo");
  const auto n = graph.node_count();
  const auto edges = graph.edges();
  // Integer component totals per number of surviving edges, so the only
  // rounding happens in the final weighted sum.
  std::vector<std::uint64_t> total_by_size(m + 1, 0);
  detail::UnionFind uf(n);
  const std::uint64_t subsets = std::uint64_t{1} << m;
  for (std::uint64_t mask = 0; mask < subsets; ++mask) {
    uf.reset();
    std::size_t merges = 0;
    for (std::size_t i = 0; i < m; ++i)
      if ((mask >> i) & 1U) merges += uf.unite(edges[i].u, edges[i].v) ? 1 : 0;
    total_by_size[static_cast<std::size_t>(std::popcount(mask))] += n - merges;
  }
  double expectation = 0.0;
  for (std::size_t k = 0; k <= m; ++k) {
    if (total_by_size[k] == 0) continue;
    expectation += static_cast<double>(total_by_size[k]) * std::pow(r, static_cast<double>(k)) *
                   std::pow(1.0 - r, static_cast<double>(m - k));
  }
  return expectation;
}

}  // namespace corrgt
