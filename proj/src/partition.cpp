#include "corrgt/partition.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>

#include "corrgt/detail/union_find.hpp"
#include "corrgt/errors.hpp"

namespace corrgt {

std::string_view to_string(PartitionFamily family) {
  switch (family) {
    case PartitionFamily::cycle: return "cycle";
    case PartitionFamily::tree: return "tree";
    case PartitionFamily::grid: return "grid";
  }
  return "unknown";
}

PartitionFamily parse_partition_family(std::string_view name) {
  if (name == "cycle") return PartitionFamily::cycle;
  if (name == "tree") return PartitionFamily::tree;
  if (name == "grid") return PartitionFamily::grid;
  throw ValidationError("partition family must be cycle, tree or grid, got '" + std::string(name) + "'");
}

std::size_t group_length(PartitionFamily family, double eps, double r, std::size_t extent, double c_grid,
                         std::optional<double> slack) {
  require(extent >= 1, "partition extent must be >= 1");
  require(eps > 0.0 && eps < 1.0, "eps must lie in (0, 1)");
  require_probability(r, "r");
  if (r == 0.0) return 1;
  if (r == 1.0) return extent;

  const double log_inv_r = std::log(1.0 / r);
  double length = 1.0;
  switch (family) {
    case PartitionFamily::cycle:
    case PartitionFamily::tree: {
      const double denom = family == PartitionFamily::tree ? 2.0 * log_inv_r : log_inv_r;
      length = std::max(-std::log1p(-eps / 2.0) / denom, 1.0);
      break;
    }
    case PartitionFamily::grid: {
      require(c_grid > 0.0, "grid constant must be > 0");
      const double s = slack.value_or(eps / 2.0);
      require(s > 0.0 && s < 1.0, "grid slack must lie in (0, 1)");
      const double k2 = -std::log1p(-s) / ((1.0 - r) * log_inv_r * c_grid);
      length = std::max(std::sqrt(k2), 1.0);
      break;
    }
  }
  // The small offset keeps exact integers (up to rounding noise) from
  // flooring one below.
  const double floored = std::floor(length + 1e-9);
  if (floored >= static_cast<double>(extent)) return extent;
  return std::max<std::size_t>(1, static_cast<std::size_t>(floored));
}

namespace {

void split_consecutive(Partition& part, std::span<const NodeId> order, std::size_t l) {
  for (std::size_t start = 0; start < order.size(); start += l) {
    const auto end = std::min(order.size(), start + l);
    part.groups.emplace_back(order.begin() + static_cast<std::ptrdiff_t>(start),
                             order.begin() + static_cast<std::ptrdiff_t>(end));
  }
}

}  // namespace

Partition partition_cycle(std::size_t n, std::size_t l, Seed seed) {
  require(n >= 1, "cycle must have nodes");
  require(l >= 1 && l <= n, "group length must satisfy 1 <= l <= n");
  Partition part;
  part.kind = PartitionFamily::cycle;
  part.node_count = n;
  part.target_size = l;
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), NodeId{0});
  split_consecutive(part, order, l);
  assign_representatives(part, seed);
  return part;
}

Partition partition_cycle(const Graph& cycle, std::size_t l, Seed seed) {
  const auto n = cycle.node_count();
  require(n >= 3 && cycle.edge_count() == n && cycle.is_connected(), "graph is not a cycle");
  for (NodeId v = 0; v < n; ++v) require(cycle.degree(v) == 2, "graph is not a cycle");
  require(l >= 1 && l <= n, "group length must satisfy 1 <= l <= n");

  std::vector<NodeId> order;
  order.reserve(n);
  NodeId prev = 0;
  NodeId cur = 0;
  order.push_back(0);
  cur = cycle.incidences(0)[0].neighbor;
  while (cur != 0) {
    order.push_back(cur);
    const auto inc = cycle.incidences(cur);
    const NodeId next = inc[0].neighbor == prev ? inc[1].neighbor : inc[0].neighbor;
    prev = cur;
    cur = next;
  }
  Partition part;
  part.kind = PartitionFamily::cycle;
  part.node_count = n;
  part.target_size = l;
  split_consecutive(part, order, l);
  assign_representatives(part, seed);
  return part;
}

namespace {

/// Rooted view of the still-unpeeled part of a tree.
struct RootedRemainder {
  std::vector<NodeId> parent;
  std::vector<std::size_t> depth;
  std::vector<std::size_t> size;
  std::vector<std::vector<NodeId>> children;
  std::size_t alive_count = 0;
};

RootedRemainder root_remainder(const Graph& tree, const std::vector<std::uint8_t>& alive) {
  const auto n = tree.node_count();
  RootedRemainder rr;
  rr.parent.assign(n, 0);
  rr.depth.assign(n, 0);
  rr.size.assign(n, 0);
  rr.children.assign(n, {});
  std::vector<NodeId> order{0};
  std::vector<std::uint8_t> seen(n, 0);
  seen[0] = 1;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto v = order[i];
    for (const auto& inc : tree.incidences(v)) {
      const auto w = inc.neighbor;
      if (!alive[w] || seen[w]) continue;
      seen[w] = 1;
      rr.parent[w] = v;
      rr.depth[w] = rr.depth[v] + 1;
      rr.children[v].push_back(w);
      order.push_back(w);
    }
  }
  rr.alive_count = order.size();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    rr.size[*it] += 1;
    if (*it != 0) rr.size[rr.parent[*it]] += rr.size[*it];
  }
  return rr;
}

void collect_subtree(const RootedRemainder& rr, NodeId top, std::vector<NodeId>& out) {
  std::vector<NodeId> stack{top};
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    out.push_back(v);
    for (const auto c : rr.children[v]) stack.push_back(c);
  }
}

}  // namespace

Partition partition_tree(const Graph& tree, std::size_t l, Seed seed) {
  require(tree.is_tree(), "partition_tree requires a tree");
  const auto n = tree.node_count();
  require(l >= 1 && l <= n, "group length must satisfy 1 <= l <= n");

  Partition part;
  part.kind = PartitionFamily::tree;
  part.node_count = n;
  part.target_size = l;
  std::vector<std::uint8_t> alive(n, 1);

  while (true) {
    const auto rr = root_remainder(tree, alive);
    if (rr.alive_count != static_cast<std::size_t>(std::count(alive.begin(), alive.end(), std::uint8_t{1})))
      throw std::logic_error("tree partition left a disconnected remainder");
    if (rr.alive_count <= l) {
      std::vector<NodeId> last;
      for (NodeId v = 0; v < n; ++v)
        if (alive[v]) last.push_back(v);
      part.groups.push_back(std::move(last));
      part.closures.emplace_back();
      break;
    }

    // Deepest leaf, lowest id among ties.
    NodeId leaf = 0;
    for (NodeId v = 0; v < n; ++v) {
      if (!alive[v] || !rr.children[v].empty()) continue;
      if (rr.depth[v] > rr.depth[leaf] || !rr.children[leaf].empty()) leaf = v;
    }

    std::size_t need = l;
    NodeId u = leaf;
    while (rr.size[u] < need) u = rr.parent[u];

    std::vector<NodeId> group;
    std::vector<NodeId> breaking;
    NodeId toward_leaf = leaf;  // child of u on the path to the leaf
    bool first_level = true;
    while (need > 0) {
      if (rr.size[u] == need) {
        collect_subtree(rr, u, group);
        need = 0;
        break;
      }
      breaking.push_back(u);
      if (first_level)
        while (rr.parent[toward_leaf] != u) toward_leaf = rr.parent[toward_leaf];

      auto kids = rr.children[u];
      std::sort(kids.begin(), kids.end(), [&](NodeId a, NodeId b) {
        if (first_level && (a == toward_leaf) != (b == toward_leaf)) return a == toward_leaf;
        return std::tie(rr.size[a], a) < std::tie(rr.size[b], b);
      });
      first_level = false;
      NodeId descend = u;
      for (const auto c : kids) {
        if (rr.size[c] <= need) {
          collect_subtree(rr, c, group);
          need -= rr.size[c];
          if (need == 0) break;
        } else {
          descend = c;
          break;
        }
      }
      if (need == 0) break;
      if (descend == u) throw std::logic_error("tree partition ran out of subtrees");
      u = descend;
    }

    std::sort(group.begin(), group.end());
    for (const auto v : group) alive[v] = 0;
    part.groups.push_back(std::move(group));
    std::sort(breaking.begin(), breaking.end());
    part.closures.push_back(std::move(breaking));
  }
  assign_representatives(part, seed);
  return part;
}

Partition partition_grid(std::size_t side, std::size_t k, Seed seed) {
  require(side >= 1, "grid side must be >= 1");
  require(k >= 1 && k <= side, "subgrid side must satisfy 1 <= k <= side");
  Partition part;
  part.kind = PartitionFamily::grid;
  part.node_count = side * side;
  part.target_size = k;
  for (std::size_t br = 0; br < side; br += k) {
    for (std::size_t bc = 0; bc < side; bc += k) {
      std::vector<NodeId> group;
      for (std::size_t row = br; row < std::min(side, br + k); ++row)
        for (std::size_t col = bc; col < std::min(side, bc + k); ++col)
          group.push_back(static_cast<NodeId>(row * side + col));
      part.groups.push_back(std::move(group));
    }
  }
  assign_representatives(part, seed);
  return part;
}

void assign_representatives(Partition& partition, Seed seed) {
  auto rng = make_rng(seed);
  partition.representatives.clear();
  for (const auto& g : partition.groups) partition.representatives.push_back(g[uniform_index(rng, g.size())]);
}

std::vector<NodeId> steiner_closure(const Graph& tree, std::span<const NodeId> s) {
  require(tree.is_tree(), "steiner_closure requires a tree");
  require(!s.empty(), "steiner_closure requires a nonempty node set");
  const auto n = tree.node_count();
  std::vector<std::uint8_t> in_s(n, 0);
  for (const auto v : s) {
    require(v < n, "node id out of range");
    in_s[v] = 1;
  }
  const NodeId root = s.front();
  std::vector<NodeId> parent(n, root);
  std::vector<NodeId> order{root};
  std::vector<std::uint8_t> seen(n, 0);
  seen[root] = 1;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (const auto& inc : tree.incidences(order[i]))
      if (!seen[inc.neighbor]) {
        seen[inc.neighbor] = 1;
        parent[inc.neighbor] = order[i];
        order.push_back(inc.neighbor);
      }
  std::vector<std::uint8_t> marked = in_s;
  for (auto it = order.rbegin(); it != order.rend(); ++it)
    if (marked[*it] && *it != root) marked[parent[*it]] = 1;
  std::vector<NodeId> closure;
  for (NodeId v = 0; v < n; ++v)
    if (marked[v] && !in_s[v]) closure.push_back(v);
  return closure;
}

namespace {

bool connected_within(const Graph& graph, std::span<const NodeId> nodes) {
  if (nodes.empty()) return true;
  std::vector<std::uint8_t> member(graph.node_count(), 0);
  for (const auto v : nodes) member[v] = 1;
  std::vector<NodeId> stack{nodes.front()};
  member[nodes.front()] = 2;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    for (const auto& inc : graph.incidences(v))
      if (member[inc.neighbor] == 1) {
        member[inc.neighbor] = 2;
        ++reached;
        stack.push_back(inc.neighbor);
      }
  }
  return reached == static_cast<std::size_t>(std::count_if(member.begin(), member.end(), [](auto m) { return m != 0; }));
}

}  // namespace

std::vector<std::string> partition_issues(const Partition& partition, const Graph* graph) {
  std::vector<std::string> issues;
  const auto n = partition.node_count;
  std::vector<std::size_t> owner(n, SIZE_MAX);
  for (std::size_t i = 0; i < partition.groups.size(); ++i) {
    if (partition.groups[i].empty()) issues.push_back("group " + std::to_string(i) + " is empty");
    for (const auto v : partition.groups[i]) {
      if (v >= n) {
        issues.push_back("group " + std::to_string(i) + " holds out-of-range node " + std::to_string(v));
        continue;
      }
      if (owner[v] != SIZE_MAX) issues.push_back("node " + std::to_string(v) + " appears in two groups");
      owner[v] = i;
    }
  }
  for (std::size_t v = 0; v < n; ++v)
    if (owner[v] == SIZE_MAX) issues.push_back("node " + std::to_string(v) + " is not covered");

  if (partition.kind != PartitionFamily::grid) {
    std::size_t short_groups = 0;
    for (const auto& g : partition.groups) {
      if (g.size() > partition.target_size) issues.push_back("group larger than l");
      if (g.size() < partition.target_size) ++short_groups;
    }
    if (short_groups > 1) issues.push_back("more than one group is smaller than l");
  }

  if (!partition.representatives.empty()) {
    if (partition.representatives.size() != partition.groups.size()) {
      issues.push_back("representative count differs from group count");
    } else {
      for (std::size_t i = 0; i < partition.groups.size(); ++i) {
        const auto& g = partition.groups[i];
        if (std::find(g.begin(), g.end(), partition.representatives[i]) == g.end())
          issues.push_back("representative of group " + std::to_string(i) + " lies outside it");
      }
    }
  }

  if (partition.kind == PartitionFamily::tree) {
    if (partition.closures.size() != partition.groups.size()) {
      issues.push_back("closure count differs from group count");
    } else if (graph != nullptr) {
      for (std::size_t i = 0; i < partition.groups.size(); ++i) {
        const auto& closure = partition.closures[i];
        if (closure.size() > partition.target_size) issues.push_back("closure of group " + std::to_string(i) + " exceeds l");
        std::vector<NodeId> joined = partition.groups[i];
        joined.insert(joined.end(), closure.begin(), closure.end());
        if (!connected_within(*graph, joined))
          issues.push_back("group " + std::to_string(i) + " with its closure is disconnected");
      }
    }
  }
  return issues;
}

std::vector<NodeId> exposure_order(const Partition& partition, const Graph& tree) {
  require(partition.kind == PartitionFamily::tree, "exposure order needs a tree partition");
  require(partition.node_count == tree.node_count(), "partition does not match the tree");
  require(partition.closures.size() == partition.groups.size(), "partition carries no closures");
  const auto issues = partition_issues(partition, &tree);
  require(issues.empty(), "partition does not match the tree: " + (issues.empty() ? "" : issues.front()));
  // The argument needs every closure to be exposed before its group.
  std::vector<std::size_t> owner(tree.node_count());
  for (std::size_t i = 0; i < partition.groups.size(); ++i)
    for (const auto v : partition.groups[i]) owner[v] = i;
  for (std::size_t i = 0; i < partition.groups.size(); ++i)
    for (const auto v : partition.closures[i])
      require(owner[v] > i, "closure node peeled before its group");

  std::vector<NodeId> order;
  order.reserve(tree.node_count());
  for (auto it = partition.groups.rbegin(); it != partition.groups.rend(); ++it) {
    auto g = *it;
    std::sort(g.begin(), g.end());
    order.insert(order.end(), g.begin(), g.end());
  }
  return order;
}

std::size_t exposure_max_step(const Partition& partition, const Graph& graph,
                              std::span<const std::uint8_t> survival_mask, std::span<const NodeId> order) {
  const auto n = graph.node_count();
  require(survival_mask.size() == graph.edge_count(), "mask length must equal the edge count");
  require(order.size() == n, "order must list every node once");
  std::vector<std::uint8_t> exposed(n, 0);
  for (const auto v : order) {
    require(v < n && !exposed[v], "order must list every node once");
    exposed[v] = 1;
  }
  std::fill(exposed.begin(), exposed.end(), 0);

  detail::UnionFind uf(n);
  std::vector<std::size_t> missing(partition.groups.size());
  for (std::size_t i = 0; i < partition.groups.size(); ++i) missing[i] = partition.groups[i].size();
  std::vector<std::size_t> owner(n);
  for (std::size_t i = 0; i < partition.groups.size(); ++i)
    for (const auto v : partition.groups[i]) owner[v] = i;

  auto f = [&] {
    std::size_t count = 0;
    for (std::size_t i = 0; i < partition.groups.size(); ++i) {
      if (missing[i] != 0) continue;
      const auto& g = partition.groups[i];
      const auto root = uf.find(g.front());
      count += std::all_of(g.begin(), g.end(), [&](NodeId v) { return uf.find(v) == root; }) ? 1 : 0;
    }
    return count;
  };

  std::size_t prev = 0;
  std::size_t worst = 0;
  for (const auto v : order) {
    exposed[v] = 1;
    --missing[owner[v]];
    for (const auto& inc : graph.incidences(v))
      if (exposed[inc.neighbor] && survival_mask[inc.edge]) uf.unite(v, inc.neighbor);
    const auto cur = f();
    worst = std::max(worst, cur > prev ? cur - prev : prev - cur);
    prev = cur;
  }
  return worst;
}

bool group_connected(const ComponentLabeling& labeling, std::span<const NodeId> group) {
  if (group.empty()) return true;
  const auto label = labeling.label[group.front()];
  return std::all_of(group.begin(), group.end(), [&](NodeId v) { return labeling.label[v] == label; });
}

nlohmann::json to_json(const Partition& partition) {
  nlohmann::json j = {
      {"kind", std::string(to_string(partition.kind))},
      {"node_count", partition.node_count},
      {"target_size", partition.target_size},
      {"groups", partition.groups},
      {"representatives", partition.representatives},
  };
  if (partition.kind == PartitionFamily::tree) j["closures"] = partition.closures;
  return j;
}

}  // namespace corrgt
