#include "corrgt/classic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "corrgt/analysis.hpp"
#include "corrgt/errors.hpp"

namespace corrgt {

using analysis::binary_entropy;

std::size_t splitting_group_size(std::size_t n, double p) {
  require(n >= 1, "item count must be >= 1");
  require_probability(p, "p");
  if (p == 0.0) return n;
  if (p >= 1.0) return 1;
  const double exponent = std::round(std::log2(1.0 / p));
  const double size = std::ldexp(1.0, static_cast<int>(std::min(exponent, 62.0)));
  return std::clamp<std::size_t>(static_cast<std::size_t>(size), 1, n);
}

GtResult adaptive_gt(std::size_t n, double p, const ItemOracle& oracle) {
  require(n >= 1, "item set must be nonempty");
  const std::size_t s = splitting_group_size(n, p);
  GtResult out;
  out.predicted.assign(n, 0);
  auto query = [&](std::span<const std::size_t> pool) {
    ++out.tests;
    return oracle(pool);
  };

  std::vector<std::size_t> remaining;
  std::vector<std::size_t> candidates;
  for (std::size_t start = 0; start < n; start += s) {
    remaining.clear();
    for (std::size_t i = start; i < std::min(n, start + s); ++i) remaining.push_back(i);

    while (!remaining.empty() && query(remaining)) {
      // remaining holds a defective; halve until one item is left.
      candidates = remaining;
      while (candidates.size() > 1) {
        const auto half = candidates.size() / 2;
        std::span<const std::size_t> left(candidates.data(), half);
        if (query(left)) {
          candidates.resize(half);
        } else {
          std::erase_if(remaining, [&](std::size_t x) {
            return std::binary_search(left.begin(), left.end(), x);
          });
          candidates.erase(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(half));
        }
      }
      out.predicted[candidates.front()] = 1;
      std::erase(remaining, candidates.front());
    }
  }
  return out;
}

GtResult individual_gt(std::size_t n, const ItemOracle& oracle) {
  GtResult out;
  out.predicted.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t pool[1] = {i};
    out.predicted[i] = oracle(pool) ? 1 : 0;
    ++out.tests;
  }
  return out;
}

double NonAdaptiveConfig::gamma_term(std::size_t n) const {
  validate();
  return std::log2(std::log(2.0 * static_cast<double>(n) / eps_prime) / std::log(1.0 / gamma));
}

void NonAdaptiveConfig::validate() const {
  require(gamma > 0.0 && gamma < 1.0, "gamma must lie in (0, 1)");
  require(eps_prime > 0.0 && eps_prime < 1.0, "eps' must lie in (0, 1)");
  require(design_slack >= 0.0, "design slack must be >= 0");
}

std::optional<NonAdaptivePlan> plan_nonadaptive(std::size_t n, double p, const NonAdaptiveConfig& cfg) {
  require(n >= 1, "item count must be >= 1");
  require_probability(p, "p");
  cfg.validate();
  NonAdaptivePlan plan;
  plan.n = n;
  plan.entropy = static_cast<double>(n) * binary_entropy(p);
  plan.gamma_term = cfg.gamma_term(n);
  const double g2 = plan.gamma_term * plan.gamma_term;
  if (plan.entropy < g2) return std::nullopt;

  const double nd = static_cast<double>(n);
  const double t = std::numbers::e * std::log(nd) / std::log2(1.0 / cfg.gamma) * (1.0 + cfg.design_slack) *
                       plan.entropy +
                   g2 + 2.0 * nd * p;
  plan.tests = static_cast<std::size_t>(std::ceil(t));
  // P(pool negative) = (1 - q p)^n = gamma for independent items.
  plan.inclusion = p > 0.0 ? std::min(1.0, -std::expm1(std::log(cfg.gamma) / nd) / p) : 1.0;
  plan.failure_envelope = std::pow(plan.gamma_term, 1.0 - cfg.design_slack) + cfg.eps_prime / 2.0;
  return plan;
}

PoolDesign sample_design(const NonAdaptivePlan& plan, Seed seed) {
  auto rng = make_rng(seed);
  PoolDesign design;
  design.n = plan.n;
  design.pools.reserve(plan.tests);
  std::vector<std::size_t> pool;
  for (std::size_t t = 0; t < plan.tests; ++t) {
    pool.clear();
    for (std::size_t i = 0; i < plan.n; ++i)
      if (bernoulli(rng, plan.inclusion)) pool.push_back(i);
    if (!pool.empty()) design.pools.push_back(pool);
  }
  return design;
}

PoolDesign singleton_design(std::size_t n) {
  PoolDesign design;
  design.n = n;
  for (std::size_t i = 0; i < n; ++i) design.pools.push_back({i});
  return design;
}

std::vector<std::uint8_t> decode_comp(const PoolDesign& design, std::span<const std::uint8_t> outcomes) {
  require(outcomes.size() == design.pools.size(), "one outcome per pool expected");
  std::vector<std::uint8_t> predicted(design.n, 1);
  for (std::size_t t = 0; t < design.pools.size(); ++t)
    if (!outcomes[t])
      for (const auto i : design.pools[t]) predicted[i] = 0;
  return predicted;
}

std::vector<std::uint8_t> decode_dd(const PoolDesign& design, std::span<const std::uint8_t> outcomes) {
  const auto possible = decode_comp(design, outcomes);
  std::vector<std::uint8_t> predicted(design.n, 0);
  for (std::size_t t = 0; t < design.pools.size(); ++t) {
    if (!outcomes[t]) continue;
    std::size_t count = 0;
    std::size_t last = 0;
    for (const auto i : design.pools[t]) {
      if (possible[i]) {
        ++count;
        last = i;
      }
    }
    if (count == 1) predicted[last] = 1;
  }
  return predicted;
}

GtResult run_design(const PoolDesign& design, const ItemOracle& oracle, Decoder decoder) {
  std::vector<std::uint8_t> outcomes(design.pools.size());
  for (std::size_t t = 0; t < design.pools.size(); ++t) outcomes[t] = oracle(design.pools[t]) ? 1 : 0;
  GtResult out;
  out.tests = design.pools.size();
  out.predicted = decoder == Decoder::comp ? decode_comp(design, outcomes) : decode_dd(design, outcomes);
  return out;
}

NonAdaptiveResult nonadaptive_gt(std::size_t n, double p, const NonAdaptiveConfig& cfg, Seed seed,
                                 const ItemOracle& oracle) {
  NonAdaptiveResult out;
  auto plan = plan_nonadaptive(n, p, cfg);
  if (!plan) {
    out.plan.n = n;
    out.plan.entropy = static_cast<double>(n) * binary_entropy(p);
    out.plan.gamma_term = cfg.gamma_term(n);
    return out;
  }
  out.plan = *plan;
  out.result = run_design(sample_design(*plan, seed), oracle, cfg.decoder);
  return out;
}

double entropy_lower_bound(std::size_t n, double p, double eps) {
  require_probability(p, "p");
  require_probability(eps, "eps");
  return (1.0 - eps) * static_cast<double>(n) * binary_entropy(p);
}

double strong_error_lower_bound(std::size_t n, double p, double delta, double eps) {
  return component_scaled_strong_bound(static_cast<double>(n), p, delta, eps);
}

StarBound star_lower_bound(std::size_t n, double r, double p, double delta, double eps) {
  require_probability(r, "r");
  require_probability(p, "p");
  require_probability(delta, "delta");
  require_probability(eps, "eps");
  StarBound b;
  const double same = p * p + (1.0 - p) * (1.0 - p);
  b.r_prime = r / (r + (1.0 - r) * same);
  const double bracket = binary_entropy(r) + (1.0 - r) * binary_entropy(p) - binary_entropy(eps) - 1.0 +
                         p * (1.0 - p) * (1.0 - r) * binary_entropy(b.r_prime);
  b.unclamped = static_cast<double>(n) * (1.0 - delta) * bracket;
  b.value = std::max(0.0, b.unclamped);
  return b;
}

double component_scaled_strong_bound(double components, double p, double delta, double eps) {
  require_probability(p, "p");
  require_probability(delta, "delta");
  require_probability(eps, "eps");
  require(components >= 0.0, "component count must be >= 0");
  return std::max(0.0, components * (1.0 - delta) * (binary_entropy(p) - binary_entropy(eps)));
}

}  // namespace corrgt
