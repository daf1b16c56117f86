#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "corrgt/classic.hpp"
#include "corrgt/graph.hpp"
#include "corrgt/partition.hpp"
#include "corrgt/state.hpp"

namespace corrgt {

enum class Backend { adaptive, nonadaptive, individual };
enum class StrategyKind { representative, sbm_regime, naive_full, single_probe };

std::string_view to_string(Backend backend);
std::string_view to_string(StrategyKind kind);
Backend parse_backend(std::string_view name);
StrategyKind parse_strategy_kind(std::string_view name);

struct StrategySpec {
  StrategyKind kind = StrategyKind::representative;
  Backend backend = Backend::adaptive;
  /// Partition shape; derived from the graph family when unset.
  std::optional<PartitionFamily> partition_family;
  double eps = 0.2;
  /// Backend budget eps'. Defaults to eps/4 (average error) or delta/4
  /// (maximum error).
  std::optional<double> eps_prime;
  /// Set to switch to the maximum-error criterion (eps, delta).
  std::optional<double> delta;
  /// Overrides the computed group length l (or grid side k).
  std::optional<std::size_t> group_length;
  double c_grid = kDefaultGridConstant;
  std::optional<double> grid_slack;
  double gamma = 0.5;
  double design_slack = 2.0;
  Decoder decoder = Decoder::comp;
  /// Threshold constant of the SBM regime predicates. 100 reproduces the
  /// asymptotic statement; smaller values are an exploratory scaled mode.
  double sbm_constant = 100.0;

  double resolved_eps_prime() const;
  /// Checks eps' < eps/2 (average) or eps' < delta/2 (maximum).
  void validate() const;

  bool operator==(const StrategySpec&) const = default;
};

/// Runs the backend on the representatives as independent items and copies
/// each representative's predicted state to its whole group. A refused
/// non-adaptive plan falls back to individual testing (Prediction::fallback).
Prediction run_representative(const Partition& partition, Backend backend, double p, PoolOracle& oracle,
                              Seed seed, const NonAdaptiveConfig& cfg = {});

/// Classic testing of the given nodes as independent items.
GtResult run_backend(std::span<const NodeId> items, Backend backend, double p, PoolOracle& oracle, Seed seed,
                     const NonAdaptiveConfig& cfg, bool& fallback);

enum class SbmRegime { indeterminate = 0, connected = 1, cluster_level = 2, shattered = 3, inter_connected = 4 };

std::string_view to_string(SbmRegime regime);

struct SbmThresholds {
  double intra_high = 0.0;     // c ln(n) / k
  double intra_low = 0.0;      // 1 / (c k)
  double inter_term = 0.0;     // 1 - (1 - r2)^(k^2)
  double inter_connect = 0.0;  // c ln(g) / g
  double inter_isolate = 0.0;  // 1 / (c g)
  double inter_low = 0.0;      // 1 / (c n)
  double inter_high = 0.0;     // c ln(n) / n
};

struct SbmClassification {
  SbmRegime regime = SbmRegime::indeterminate;
  SbmThresholds thresholds;
};

/// 1 - (1 - r2)^(k^2), evaluated in log space.
double sbm_inter_term(std::size_t k, double r2);

/// Regime predicates, natural logs, tested in order 1, 2, 3, 4; the first
/// that holds wins, otherwise Indeterminate.
SbmClassification sbm_classify(std::size_t n, std::size_t k, std::size_t g, double r1, double r2,
                               double constant = 100.0);

/// Regime 1/4: one test on a random node, propagated to all. Regime 2: one
/// representative per cluster. Regime 3: every node as an item. Throws
/// ValidationError for Indeterminate.
Prediction run_sbm(const Graph& sbm, SbmRegime regime, Backend backend, double p, PoolOracle& oracle, Seed seed,
                   const NonAdaptiveConfig& cfg = {});

struct Feasibility {
  bool feasible = false;
  double bound = 1.0;
  std::size_t l = 1;
  std::size_t groups = 0;
  std::string derivation;
};

/// Non-asymptotic tail bound for the maximum-error variant. With G groups
/// of size at most l and deviation eps n / 2:
///   cycle (Hoeffding): exp(-eps^2 n^2 / (2 G l^2))
///   tree (Azuma over G group exposures): 2 exp(-eps^2 n^2 / (8 G l^2))
///   grid (Hoeffding, blocks of k^2 nodes): exp(-eps^2 n^2 / (2 G k^4))
/// Feasible iff delta / 2 exceeds the bound.
Feasibility strong_error_feasible(PartitionFamily family, std::size_t n, double eps, double delta, double r,
                                  double c_grid = kDefaultGridConstant);

struct ResolvedStrategy {
  Strategy run;
  nlohmann::json params;  // l, eps', regime and thresholds, ...
};

/// Binds a spec to a graph and an (r, p) point. The graph passed in is used
/// for the partition; trials on other graphs (fresh draws) re-partition.
ResolvedStrategy resolve_strategy(const StrategySpec& spec, const Graph& graph, double r, double p);

PartitionFamily default_partition_family(const Graph& graph);

}  // namespace corrgt
