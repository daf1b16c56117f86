#pragma once

// Test-side reference computations. Nothing here calls into the library's
// numerical code, so agreement is evidence rather than tautology.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using EdgeList = std::vector<std::pair<int, int>>;

/// Component labels by breadth-first search over the kept edges.
inline std::vector<int> bfs_labels(int n, const EdgeList& edges, const std::vector<bool>& keep) {
  std::vector<std::vector<int>> adj(n);
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (keep[i]) {
      adj[edges[i].first].push_back(edges[i].second);
      adj[edges[i].second].push_back(edges[i].first);
    }
  std::vector<int> label(n, -1);
  int next = 0;
  for (int s = 0; s < n; ++s) {
    if (label[s] >= 0) continue;
    std::vector<int> queue{s};
    label[s] = next;
    for (std::size_t i = 0; i < queue.size(); ++i)
      for (int w : adj[queue[i]])
        if (label[w] < 0) {
          label[w] = next;
          queue.push_back(w);
        }
    ++next;
  }
  return label;
}

inline int bfs_component_count(int n, const EdgeList& edges, const std::vector<bool>& keep) {
  int count = 0;
  for (int l : bfs_labels(n, edges, keep)) count = std::max(count, l + 1);
  return count;
}

/// E[#components] by brute force over all edge subsets with BFS.
inline double brute_component_expectation(int n, const EdgeList& edges, double r) {
  const std::size_t m = edges.size();
  double total = 0.0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    std::vector<bool> keep(m);
    int k = 0;
    for (std::size_t i = 0; i < m; ++i) {
      keep[i] = (mask >> i) & 1U;
      k += keep[i];
    }
    total += std::pow(r, k) * std::pow(1.0 - r, static_cast<double>(m) - k) * bfs_component_count(n, edges, keep);
  }
  return total;
}

/// Explicit rooted tree in which every node has d children, truncated at
/// `depth` levels below the root. Node 0 is the root.
struct TruncatedTree {
  std::vector<std::vector<int>> children;
  std::vector<int> parent;
};

inline TruncatedTree truncated_tree(int d, int depth) {
  TruncatedTree t;
  t.children.emplace_back();
  t.parent.push_back(-1);
  std::vector<int> level{0};
  for (int lv = 0; lv < depth; ++lv) {
    std::vector<int> next;
    for (int v : level)
      for (int c = 0; c < d; ++c) {
        const int id = static_cast<int>(t.children.size());
        t.children.emplace_back();
        t.parent.push_back(v);
        t.children[v].push_back(id);
        next.push_back(id);
      }
    level = std::move(next);
  }
  return t;
}

/// P(|C(root)| = t) on the truncated tree for t = 1..t_max, by enumerating
/// every connected node set containing the root and weighting it with
/// r^(internal edges) (1-r)^(edges leaving the set). The tree must be deep
/// enough that no set of size <= t_max touches the truncation.
inline std::vector<double> truncated_tree_pmf(int d, double r, int t_max) {
  const auto tree = truncated_tree(d, t_max);
  std::vector<double> pmf(t_max + 1, 0.0);
  std::set<std::vector<int>> seen;
  std::function<void(std::vector<int>&)> grow = [&](std::vector<int>& set) {
    std::vector<int> sorted = set;
    std::sort(sorted.begin(), sorted.end());
    if (!seen.insert(sorted).second) return;
    int leaving = 0;
    std::set<int> in(set.begin(), set.end());
    std::vector<int> frontier;
    for (int v : set)
      for (int c : tree.children[v])
        if (!in.count(c)) {
          ++leaving;
          frontier.push_back(c);
        }
    const int t = static_cast<int>(set.size());
    pmf[t] += std::pow(r, t - 1) * std::pow(1.0 - r, leaving);
    if (t == t_max) return;
    for (int c : frontier) {
      set.push_back(c);
      grow(set);
      set.pop_back();
    }
  };
  std::vector<int> start{0};
  grow(start);
  return pmf;
}

/// Mean total progeny of a Galton-Watson process with Binomial(3, r)
/// offspring: 1 / (1 - 3r) for r < 1/3.
inline double branching_mean(double r) { return 1.0 / (1.0 - 3.0 * r); }

/// Smallest nonnegative fixed point of the survival equation, iterated from 1.
inline double p_infinity_fixed_point(double r) {
  long double p = 1.0L;
  const long double rl = r;
  for (int it = 0; it < 10'000'000; ++it) {
    const long double q = 1.0L - rl * p;  // one child subtree fails to carry the root to infinity
    const long double next = 1.0L - q * q * q;
    if (std::fabs(static_cast<double>(next - p)) < 1e-16L) return static_cast<double>(next);
    p = next;
  }
  return static_cast<double>(p);
}

/// All labeled trees on n nodes, decoded from every Pruefer sequence.
inline std::vector<EdgeList> all_labeled_trees(int n) {
  std::vector<EdgeList> out;
  if (n == 1) {
    out.emplace_back();
    return out;
  }
  if (n == 2) {
    out.push_back({{0, 1}});
    return out;
  }
  std::vector<int> seq(n - 2, 0);
  while (true) {
    std::vector<int> degree(n, 1);
    for (int x : seq) ++degree[x];
    EdgeList edges;
    std::vector<int> deg = degree;
    for (int x : seq) {
      int leaf = 0;
      while (deg[leaf] != 1) ++leaf;
      edges.push_back({std::min(leaf, x), std::max(leaf, x)});
      --deg[leaf];
      --deg[x];
    }
    int a = -1, b = -1;
    for (int v = 0; v < n; ++v)
      if (deg[v] == 1) (a < 0 ? a : b) = v;
    edges.push_back({a, b});
    out.push_back(edges);
    int i = n - 3;
    while (i >= 0 && seq[i] == n - 1) seq[i--] = 0;
    if (i < 0) break;
    ++seq[i];
  }
  return out;
}

inline EdgeList grid_edges(int side) {
  EdgeList e;
  for (int row = 0; row < side; ++row)
    for (int col = 0; col < side; ++col) {
      const int v = row * side + col;
      if (col + 1 < side) e.push_back({v, v + 1});
      if (row + 1 < side) e.push_back({v, v + side});
    }
  return e;
}

/// Exact probability that the k x k grid is connected.
inline double exact_grid_connectivity(int k, double r) {
  const auto edges = grid_edges(k);
  const std::size_t m = edges.size();
  double total = 0.0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    std::vector<bool> keep(m);
    int kept = 0;
    for (std::size_t i = 0; i < m; ++i) {
      keep[i] = (mask >> i) & 1U;
      kept += keep[i];
    }
    if (bfs_component_count(k * k, edges, keep) == 1)
      total += std::pow(r, kept) * std::pow(1.0 - r, static_cast<double>(m) - kept);
  }
  return total;
}

/// P(edge present | both endpoints share a state) on a single edge, by
/// summing over the edge and the component states.
inline double two_node_r_prime(double r, double p) {
  double same_and_edge = 0.0, same = 0.0;
  for (int edge = 0; edge < 2; ++edge) {
    const double pe = edge ? r : 1.0 - r;
    if (edge) {
      // One component: states always equal.
      same_and_edge += pe;
      same += pe;
    } else {
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          const double ps = (a ? p : 1.0 - p) * (b ? p : 1.0 - p);
          if (a == b) same += pe * ps;
        }
    }
  }
  return same_and_edge / same;
}

inline double entropy_bits(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

/// Regime predicates written out directly, with long double powers.
inline int sbm_regime_reference(double n, double k, double g, double r1, double r2, double c) {
  const long double inter = 1.0L - std::pow(1.0L - static_cast<long double>(r2), static_cast<long double>(k * k));
  const double hi1 = c * std::log(n) / k;
  const double lo1 = 1.0 / (c * k);
  if (r1 >= hi1 && inter >= c * std::log(g) / g) return 1;
  if (r1 >= hi1 && inter <= 1.0 / (c * g)) return 2;
  if (r1 <= lo1 && r2 <= 1.0 / (c * n)) return 3;
  if (r1 <= lo1 && r2 >= c * std::log(n) / n && g > 1) return 4;
  return 0;
}

}  // namespace oracle
