#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "corrgt/random.hpp"

namespace corrgt {

using NodeId = std::uint32_t;

struct Edge {
  NodeId u = 0;
  NodeId v = 0;

  auto operator<=>(const Edge&) const = default;
};

enum class Family { cycle, path, star, tree, grid, d_regular, sbm, custom };

std::string_view to_string(Family family);
Family parse_family(std::string_view name);

/// Family tag plus the parameters needed to build one member of it.
///
/// `nodes` is used by cycle/path/star/tree/d_regular/sbm, `side` by grid,
/// `degree` by d_regular, and `clusters`/`q_intra`/`q_inter` by sbm (the
/// base-graph edge probabilities, applied before fault sampling).
struct FamilySpec {
  Family family = Family::custom;
  std::size_t nodes = 0;
  std::size_t side = 0;
  std::size_t degree = 0;
  std::size_t clusters = 0;
  double q_intra = 1.0;
  double q_inter = 0.0;

  std::size_t node_count() const;
  std::size_t cluster_size() const;
  void validate() const;

  bool operator==(const FamilySpec&) const = default;
};

/// Sorted-adjacency entry: the neighbour and the index of the edge leading to it.
struct Incidence {
  NodeId neighbor;
  std::uint32_t edge;
};

/// Immutable simple undirected graph. Edges are stored canonically (u < v,
/// sorted), so edge indices and survival masks are reproducible.
class Graph {
 public:
  /// Validates the simple-graph invariants and the invariants of `family`.
  Graph(std::size_t node_count, std::vector<Edge> edges, FamilySpec family = {});

  std::size_t node_count() const noexcept { return node_count_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }
  const FamilySpec& family() const noexcept { return family_; }

  std::span<const Incidence> incidences(NodeId v) const;
  std::size_t degree(NodeId v) const;

  /// Connected components of the graph itself (every edge present).
  std::size_t component_count() const;
  bool is_connected() const { return component_count() == 1; }
  bool is_tree() const { return node_count_ >= 1 && edges_.size() + 1 == node_count_ && is_connected(); }

 private:
  std::size_t node_count_;
  std::vector<Edge> edges_;
  FamilySpec family_;
  std::vector<std::size_t> offsets_;
  std::vector<Incidence> adjacency_;
};

/// Builds a member of `spec.family`. Deterministic in (spec, seed); only the
/// random families (tree, d_regular, sbm) consume randomness.
Graph build_graph(const FamilySpec& spec, Seed seed = 0);

/// Custom graphs as text: first line "n m", then m lines "u v".
Graph read_edge_list(std::istream& in);
Graph read_edge_list_file(const std::string& path);
void write_edge_list(std::ostream& out, const Graph& graph);

/// One sample of the edge-faulty graph G_r.
class RealizedGraph {
 public:
  RealizedGraph(const Graph& base, std::vector<std::uint8_t> survival_mask, double survival_prob, Seed seed);

  const Graph& base() const noexcept { return *base_; }
  std::span<const std::uint8_t> survival_mask() const noexcept { return mask_; }
  double survival_prob() const noexcept { return survival_prob_; }
  Seed seed() const noexcept { return seed_; }
  std::size_t surviving_edges() const noexcept { return surviving_; }

  /// Probability of drawing exactly this mask: r^k (1-r)^(m-k).
  double probability() const;

 private:
  const Graph* base_;
  std::vector<std::uint8_t> mask_;
  double survival_prob_;
  Seed seed_;
  std::size_t surviving_;
};

/// Each edge survives independently with probability r. The base graph must
/// outlive the result.
RealizedGraph realize_edges(const Graph& graph, double r, Seed seed);

struct ComponentLabeling {
  std::vector<std::uint32_t> label;   // contiguous ids, in order of first node
  std::size_t component_count = 0;
  std::vector<std::size_t> sizes;     // indexed by label
};

ComponentLabeling components(const RealizedGraph& realized);
ComponentLabeling components(const Graph& graph);

inline constexpr std::size_t kEnumerationEdgeBudget = 24;

/// E[#components of G_r] by summing over all 2^m edge subsets.
/// Throws BudgetError when m exceeds kEnumerationEdgeBudget.
double exact_component_expectation(const Graph& graph, double r);

}  // namespace corrgt
