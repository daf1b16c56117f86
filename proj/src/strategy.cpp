#include "corrgt/strategy.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <sstream>

#include "corrgt/errors.hpp"

namespace corrgt {

std::string_view to_string(Backend backend) {
  switch (backend) {
    case Backend::adaptive: return "adaptive";
    case Backend::nonadaptive: return "nonadaptive";
    case Backend::individual: return "individual";
  }
  return "unknown";
}

std::string_view to_string(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::representative: return "representative";
    case StrategyKind::sbm_regime: return "sbm_regime";
    case StrategyKind::naive_full: return "naive_full";
    case StrategyKind::single_probe: return "single_probe";
  }
  return "unknown";
}

Backend parse_backend(std::string_view name) {
  if (name == "adaptive") return Backend::adaptive;
  if (name == "nonadaptive") return Backend::nonadaptive;
  if (name == "individual") return Backend::individual;
  throw ValidationError("backend must be adaptive, nonadaptive or individual, got '" + std::string(name) + "'");
}

StrategyKind parse_strategy_kind(std::string_view name) {
  if (name == "representative") return StrategyKind::representative;
  if (name == "sbm_regime") return StrategyKind::sbm_regime;
  if (name == "naive_full") return StrategyKind::naive_full;
  if (name == "single_probe") return StrategyKind::single_probe;
  throw ValidationError("unknown strategy kind '" + std::string(name) + "'");
}

std::string_view to_string(SbmRegime regime) {
  switch (regime) {
    case SbmRegime::connected: return "connected";
    case SbmRegime::cluster_level: return "cluster_level";
    case SbmRegime::shattered: return "shattered";
    case SbmRegime::inter_connected: return "inter_connected";
    case SbmRegime::indeterminate: return "indeterminate";
  }
  return "unknown";
}

double StrategySpec::resolved_eps_prime() const {
  if (eps_prime) return *eps_prime;
  return delta ? *delta / 4.0 : eps / 4.0;
}

void StrategySpec::validate() const {
  require(eps >= 0.0 && eps < 1.0, "eps must lie in [0, 1)");
  if (delta) require(*delta > 0.0 && *delta < 1.0, "delta must lie in (0, 1)");
  if (group_length) require(*group_length >= 1, "group length must be >= 1");
  require(c_grid > 0.0, "c_grid must be > 0");
  if (grid_slack) require(*grid_slack > 0.0 && *grid_slack < 1.0, "grid slack must lie in (0, 1)");
  require(gamma > 0.0 && gamma < 1.0, "gamma must lie in (0, 1)");
  require(design_slack >= 0.0, "design slack must be >= 0");
  require(sbm_constant > 0.0, "sbm constant must be > 0");

  const double ep = resolved_eps_prime();
  if (kind == StrategyKind::representative) {
    require(eps > 0.0, "representative strategies need eps > 0");
    if (delta)
      require(ep > 0.0 && ep < *delta / 2.0, "eps' must satisfy 0 < eps' < delta/2 under maximum error");
    else
      require(ep > 0.0 && ep < eps / 2.0, "eps' must satisfy 0 < eps' < eps/2 under average error");
  }
  if (backend == Backend::nonadaptive) require(ep > 0.0 && ep < 1.0, "eps' must lie in (0, 1)");
}

GtResult run_backend(std::span<const NodeId> items, Backend backend, double p, PoolOracle& oracle, Seed seed,
                     const NonAdaptiveConfig& cfg, bool& fallback) {
  std::vector<NodeId> buffer;
  const ItemOracle item_oracle = [&](std::span<const std::size_t> idx) {
    buffer.clear();
    for (const auto i : idx) buffer.push_back(items[i]);
    return oracle.test(buffer);
  };
  switch (backend) {
    case Backend::adaptive:
      return adaptive_gt(items.size(), p, item_oracle);
    case Backend::nonadaptive: {
      auto out = nonadaptive_gt(items.size(), p, cfg, seed, item_oracle);
      if (out.result) return *out.result;
      fallback = true;
      return individual_gt(items.size(), item_oracle);
    }
    case Backend::individual:
      return individual_gt(items.size(), item_oracle);
  }
  throw std::logic_error("unhandled backend");
}

Prediction run_representative(const Partition& partition, Backend backend, double p, PoolOracle& oracle,
                              Seed seed, const NonAdaptiveConfig& cfg) {
  require(partition.representatives.size() == partition.groups.size() && !partition.groups.empty(),
          "partition needs one representative per group");
  require(partition.node_count == oracle.node_count(), "partition does not cover the tested nodes");
  Prediction out;
  const auto gt = run_backend(partition.representatives, backend, p, oracle, seed, cfg, out.fallback);
  out.states.assign(partition.node_count, 0);
  for (std::size_t i = 0; i < partition.groups.size(); ++i)
    for (const auto v : partition.groups[i]) out.states[v] = gt.predicted[i];
  return out;
}

double sbm_inter_term(std::size_t k, double r2) {
  require_probability(r2, "r2");
  const double k2 = static_cast<double>(k) * static_cast<double>(k);
  if (r2 == 1.0) return k2 > 0.0 ? 1.0 : 0.0;
  return -std::expm1(k2 * std::log1p(-r2));
}

SbmClassification sbm_classify(std::size_t n, std::size_t k, std::size_t g, double r1, double r2,
                               double constant) {
  require(n >= 1 && k >= 1 && g >= 1 && k * g == n, "sbm classification requires k * g == n");
  require_probability(r1, "r1");
  require_probability(r2, "r2");
  require(constant > 0.0, "threshold constant must be > 0");
  const double nd = static_cast<double>(n);
  const double kd = static_cast<double>(k);
  const double gd = static_cast<double>(g);

  SbmClassification out;
  auto& t = out.thresholds;
  t.intra_high = constant * std::log(nd) / kd;
  t.intra_low = 1.0 / (constant * kd);
  t.inter_term = sbm_inter_term(k, r2);
  t.inter_connect = constant * std::log(gd) / gd;
  t.inter_isolate = 1.0 / (constant * gd);
  t.inter_low = 1.0 / (constant * nd);
  t.inter_high = constant * std::log(nd) / nd;

  if (r1 >= t.intra_high && t.inter_term >= t.inter_connect)
    out.regime = SbmRegime::connected;
  else if (r1 >= t.intra_high && t.inter_term <= t.inter_isolate)
    out.regime = SbmRegime::cluster_level;
  else if (r1 <= t.intra_low && r2 <= t.inter_low)
    out.regime = SbmRegime::shattered;
  else if (r1 <= t.intra_low && r2 >= t.inter_high && g > 1)
    out.regime = SbmRegime::inter_connected;
  return out;
}

Prediction run_sbm(const Graph& sbm, SbmRegime regime, Backend backend, double p, PoolOracle& oracle, Seed seed,
                   const NonAdaptiveConfig& cfg) {
  require(sbm.family().family == Family::sbm, "run_sbm requires an sbm graph");
  const auto n = sbm.node_count();
  const auto k = sbm.family().cluster_size();
  Prediction out;
  out.states.assign(n, 0);
  switch (regime) {
    case SbmRegime::connected:
    case SbmRegime::inter_connected: {
      auto rng = make_rng(seed);
      const NodeId probe[1] = {static_cast<NodeId>(uniform_index(rng, n))};
      std::fill(out.states.begin(), out.states.end(), oracle.test(probe) ? 1 : 0);
      return out;
    }
    case SbmRegime::cluster_level: {
      auto rng = make_rng(seed);
      std::vector<NodeId> reps;
      for (std::size_t c = 0; c < sbm.family().clusters; ++c)
        reps.push_back(static_cast<NodeId>(c * k + uniform_index(rng, k)));
      const auto gt = run_backend(reps, backend, p, oracle, derive_seed(seed, 1), cfg, out.fallback);
      for (std::size_t v = 0; v < n; ++v) out.states[v] = gt.predicted[v / k];
      return out;
    }
    case SbmRegime::shattered: {
      std::vector<NodeId> all(n);
      std::iota(all.begin(), all.end(), NodeId{0});
      out.states = run_backend(all, backend, p, oracle, seed, cfg, out.fallback).predicted;
      return out;
    }
    case SbmRegime::indeterminate:
      break;
  }
  throw ValidationError("run_sbm cannot act on an Indeterminate regime; use naive_full");
}

Feasibility strong_error_feasible(PartitionFamily family, std::size_t n, double eps, double delta, double r,
                                  double c_grid) {
  require(n >= 1, "n must be >= 1");
  require(eps >= 0.0 && eps < 1.0, "eps must lie in [0, 1)");
  require(delta > 0.0, "delta must be > 0");
  require_probability(r, "r");
  Feasibility out;
  const double nd = static_cast<double>(n);
  std::ostringstream why;
  if (eps == 0.0) {
    out.bound = 1.0;
    out.l = 1;
    out.groups = n;
    out.feasible = delta / 2.0 > out.bound;
    out.derivation = "eps = 0: no deviation budget, bound = 1";
    return out;
  }
  if (family == PartitionFamily::grid) {
    const auto side = static_cast<std::size_t>(std::llround(std::sqrt(nd)));
    require(side * side == n, "grid feasibility needs a square node count");
    out.l = group_length(family, eps, r, side, c_grid);
    const auto blocks = (side + out.l - 1) / out.l;
    out.groups = blocks * blocks;
    const double range = static_cast<double>(out.l * out.l);
    out.bound = std::exp(-eps * eps * nd * nd / (2.0 * static_cast<double>(out.groups) * range * range));
    why << "Hoeffding over " << out.groups << " independent blocks ranged [0, " << out.l * out.l
        << "], deviation eps*n/2: exp(-eps^2 n^2 / (2 G k^4))";
  } else {
    out.l = group_length(family, eps, r, n);
    out.groups = (n + out.l - 1) / out.l;
    const double l = static_cast<double>(out.l);
    const double g = static_cast<double>(out.groups);
    if (family == PartitionFamily::cycle) {
      out.bound = std::exp(-eps * eps * nd * nd / (2.0 * g * l * l));
      why << "Hoeffding over " << out.groups << " independent arcs ranged [0, " << out.l
          << "], deviation eps*n/2: exp(-eps^2 n^2 / (2 G l^2))";
    } else {
      out.bound = 2.0 * std::exp(-eps * eps * nd * nd / (8.0 * g * l * l));
      why << "Azuma over the group-exposure martingale, " << out.groups << " steps with differences <= " << out.l
          << ", deviation eps*n/2: 2 exp(-eps^2 n^2 / (8 G l^2))";
    }
  }
  out.feasible = delta / 2.0 > out.bound;
  why << "; feasible iff delta/2 > bound";
  out.derivation = why.str();
  return out;
}

PartitionFamily default_partition_family(const Graph& graph) {
  switch (graph.family().family) {
    case Family::cycle: return PartitionFamily::cycle;
    case Family::grid: return PartitionFamily::grid;
    case Family::path:
    case Family::star:
    case Family::tree: return PartitionFamily::tree;
    default: break;
  }
  if (graph.is_tree()) return PartitionFamily::tree;
  throw ValidationError("no partition known for graph family '" + std::string(to_string(graph.family().family)) +
                        "'; set strategy.partition");
}

namespace {

std::size_t partition_extent(PartitionFamily family, const Graph& graph) {
  if (family != PartitionFamily::grid) return graph.node_count();
  require(graph.family().family == Family::grid, "grid partition requires a grid graph");
  return graph.family().side;
}

Partition build_partition(PartitionFamily family, const Graph& graph, std::size_t l, Seed seed) {
  switch (family) {
    case PartitionFamily::cycle: return partition_cycle(graph, l, seed);
    case PartitionFamily::tree: return partition_tree(graph, l, seed);
    case PartitionFamily::grid: return partition_grid(partition_extent(family, graph), l, seed);
  }
  throw std::logic_error("unhandled partition family");
}

NonAdaptiveConfig backend_config(const StrategySpec& spec) {
  NonAdaptiveConfig cfg;
  cfg.gamma = spec.gamma;
  cfg.eps_prime = spec.resolved_eps_prime();
  cfg.design_slack = spec.design_slack;
  cfg.decoder = spec.decoder;
  return cfg;
}

Prediction test_everything(PoolOracle& oracle, std::size_t n) {
  Prediction out;
  out.states.assign(n, 0);
  for (NodeId v = 0; v < n; ++v) {
    const NodeId pool[1] = {v};
    out.states[v] = oracle.test(pool) ? 1 : 0;
  }
  return out;
}

}  // namespace

ResolvedStrategy resolve_strategy(const StrategySpec& spec, const Graph& graph, double r, double p) {
  spec.validate();
  require_probability(r, "r");
  require_probability(p, "p");
  const auto cfg = backend_config(spec);
  ResolvedStrategy out;
  out.params = {{"kind", std::string(to_string(spec.kind))},
                {"backend", std::string(to_string(spec.backend))},
                {"eps", spec.eps},
                {"eps_prime", cfg.eps_prime},
                {"criterion", spec.delta ? "maximum" : "average"}};
  if (spec.delta) out.params["delta"] = *spec.delta;
  if (spec.backend == Backend::nonadaptive) {
    out.params["gamma"] = cfg.gamma;
    out.params["design_slack"] = cfg.design_slack;
    out.params["decoder"] = cfg.decoder == Decoder::comp ? "comp" : "dd";
  }

  switch (spec.kind) {
    case StrategyKind::naive_full:
      out.run = [](const TrialContext& ctx, PoolOracle& oracle) {
        return test_everything(oracle, ctx.graph.node_count());
      };
      return out;

    case StrategyKind::single_probe:
      out.run = [](const TrialContext& ctx, PoolOracle& oracle) {
        auto rng = make_rng(ctx.seed);
        const NodeId probe[1] = {static_cast<NodeId>(uniform_index(rng, ctx.graph.node_count()))};
        Prediction pred;
        pred.states.assign(ctx.graph.node_count(), oracle.test(probe) ? 1 : 0);
        return pred;
      };
      return out;

    case StrategyKind::representative: {
      const auto family = spec.partition_family.value_or(default_partition_family(graph));
      const auto extent = partition_extent(family, graph);
      const auto l = spec.group_length.value_or(group_length(family, spec.eps, r, extent, spec.c_grid, spec.grid_slack));
      require(l <= extent, "group length exceeds the graph");
      auto base = std::make_shared<const Partition>(build_partition(family, graph, l, 0));
      const Graph* base_graph = &graph;

      out.params["partition"] = std::string(to_string(family));
      out.params["l"] = l;
      out.params["groups"] = base->groups.size();
      out.params["improvement_ratio"] =
          static_cast<double>(graph.node_count()) / static_cast<double>(base->groups.size());
      if (family == PartitionFamily::grid) {
        out.params["c_grid"] = spec.c_grid;
        out.params["grid_slack"] = spec.grid_slack.value_or(spec.eps / 2.0);
      }
      if (spec.delta) {
        const auto f = strong_error_feasible(family, graph.node_count(), spec.eps, *spec.delta, r, spec.c_grid);
        out.params["feasibility"] = {{"feasible", f.feasible},
                                     {"bound", f.bound},
                                     {"l", f.l},
                                     {"groups", f.groups},
                                     {"derivation", f.derivation}};
      }
      const auto backend = spec.backend;
      out.run = [=](const TrialContext& ctx, PoolOracle& oracle) {
        Partition part = &ctx.graph == base_graph ? *base : build_partition(family, ctx.graph, l, 0);
        assign_representatives(part, derive_seed(ctx.seed, 0));
        return run_representative(part, backend, ctx.p, oracle, derive_seed(ctx.seed, 1), cfg);
      };
      return out;
    }

    case StrategyKind::sbm_regime: {
      const auto& fam = graph.family();
      require(fam.family == Family::sbm, "sbm_regime strategy requires an sbm graph");
      const double r1 = r * fam.q_intra;
      const double r2 = r * fam.q_inter;
      const auto cls = sbm_classify(graph.node_count(), fam.cluster_size(), fam.clusters, r1, r2, spec.sbm_constant);
      const auto& t = cls.thresholds;
      out.params["regime"] = std::string(to_string(cls.regime));
      out.params["regime_index"] = static_cast<int>(cls.regime);
      out.params["r1"] = r1;
      out.params["r2"] = r2;
      out.params["sbm_constant"] = spec.sbm_constant;
      out.params["scaled_thresholds"] = spec.sbm_constant != 100.0;
      out.params["thresholds"] = {{"intra_high", t.intra_high},       {"intra_low", t.intra_low},
                                  {"inter_term", t.inter_term},       {"inter_connect", t.inter_connect},
                                  {"inter_isolate", t.inter_isolate}, {"inter_low", t.inter_low},
                                  {"inter_high", t.inter_high}};
      const auto regime = cls.regime;
      const auto backend = spec.backend;
      out.run = [=](const TrialContext& ctx, PoolOracle& oracle) {
        if (regime == SbmRegime::indeterminate) {
          auto pred = test_everything(oracle, ctx.graph.node_count());
          pred.fallback = true;
          return pred;
        }
        return run_sbm(ctx.graph, regime, backend, ctx.p, oracle, ctx.seed, cfg);
      };
      return out;
    }
  }
  throw std::logic_error("unhandled strategy kind");
}

}  // namespace corrgt
