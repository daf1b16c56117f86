#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "corrgt/graph.hpp"
#include "corrgt/random.hpp"

namespace corrgt {

enum class PartitionFamily { cycle, tree, grid };

std::string_view to_string(PartitionFamily family);
PartitionFamily parse_partition_family(std::string_view name);

inline constexpr double kDefaultGridConstant = 3.0;

/// Group length for the representative strategies.
///   cycle: floor(max(ln(1/(1-eps/2)) / ln(1/r), 1))
///   tree:  the same with 2 ln(1/r) in the denominator
///   grid:  largest k with k^2 <= ln(1/(1-slack)) / ((1-r) ln(1/r) c_grid),
///          slack defaulting to eps/2.
/// `extent` is n for cycles and trees and the side length for grids; the
/// result is clamped to [1, extent]. r = 0 gives 1 and r = 1 gives `extent`.
std::size_t group_length(PartitionFamily family, double eps, double r, std::size_t extent,
                         double c_grid = kDefaultGridConstant, std::optional<double> slack = std::nullopt);

struct Partition {
  PartitionFamily kind = PartitionFamily::cycle;
  std::size_t node_count = 0;
  std::size_t target_size = 0;  // l, or the subgrid side k
  std::vector<std::vector<NodeId>> groups;
  std::vector<NodeId> representatives;
  /// Tree partitions only: the breaking points collected while peeling
  /// group i. group_i plus closure_i is connected in the tree. Groups are
  /// stored in peel order.
  std::vector<std::vector<NodeId>> closures;
};

/// Consecutive arcs 0..l-1, l..2l-1, ... of the cycle 0-1-...-(n-1)-0.
Partition partition_cycle(std::size_t n, std::size_t l, Seed seed);
/// Same, for a cycle with arbitrary labels: arcs follow the walk from node 0
/// towards its lower-id neighbour.
Partition partition_cycle(const Graph& cycle, std::size_t l, Seed seed);

/// Peels groups of exactly l nodes off a tree rooted at 0 (the last group
/// holds the root and at most l nodes). Throws ValidationError for non-trees.
Partition partition_tree(const Graph& tree, std::size_t l, Seed seed);

/// Row-major tiling of the side x side grid (node = row * side + col) into
/// k x k blocks; boundary blocks are ragged.
Partition partition_grid(std::size_t side, std::size_t k, Seed seed);

/// Uniformly random representative per group.
void assign_representatives(Partition& partition, Seed seed);

/// Minimal S' with S and S' together connected in the tree.
std::vector<NodeId> steiner_closure(const Graph& tree, std::span<const NodeId> s);

/// Human-readable invariant violations; empty when the partition is sound.
/// Pass the base graph to also check tree closures.
std::vector<std::string> partition_issues(const Partition& partition, const Graph* graph = nullptr);

/// Node order for the group-connectivity martingale on a tree partition:
/// groups from last peeled to first, ascending ids within a group.
std::vector<NodeId> exposure_order(const Partition& partition, const Graph& tree);

/// Replays f = number of groups that are fully exposed and lie in one
/// component of the exposed part of the realization, node by node in
/// `order`. Returns max |f(i+1) - f(i)|.
std::size_t exposure_max_step(const Partition& partition, const Graph& graph,
                              std::span<const std::uint8_t> survival_mask, std::span<const NodeId> order);

/// Whether every node of the group shares one component.
bool group_connected(const ComponentLabeling& labeling, std::span<const NodeId> group);

nlohmann::json to_json(const Partition& partition);

}  // namespace corrgt
