#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "corrgt/random.hpp"

namespace corrgt {

/// OR query over a subset of item indices 0..n-1.
using ItemOracle = std::function<bool(std::span<const std::size_t>)>;

/// Generalized binary splitting group size: the power of two nearest 1/p
/// (in log scale), clamped to [1, n]. p = 0 gives n; p >= 1 gives 1.
std::size_t splitting_group_size(std::size_t n, double p);

struct GtResult {
  std::vector<std::uint8_t> predicted;
  std::size_t tests = 0;
};

/// Exact adaptive testing by generalized binary splitting.
GtResult adaptive_gt(std::size_t n, double p, const ItemOracle& oracle);

/// Individual testing, one pool per item.
GtResult individual_gt(std::size_t n, const ItemOracle& oracle);

enum class Decoder { comp, definite_defectives };

struct NonAdaptiveConfig {
  double gamma = 0.5;
  double eps_prime = 0.1;
  double design_slack = 2.0;
  Decoder decoder = Decoder::comp;

  /// log2(log_{1/gamma}(2n / eps')). Recomputed on every call.
  double gamma_term(std::size_t n) const;
  void validate() const;
};

struct NonAdaptivePlan {
  std::size_t n = 0;
  double entropy = 0.0;  // H(X) = n H(p), bits
  double gamma_term = 0.0;
  std::size_t tests = 0;
  double inclusion = 0.0;  // per item, per pool
  double failure_envelope = 0.0;  // Gamma^(1 - slack) + eps'/2
};

/// Returns nullopt when H(X) < Gamma^2: the caller should fall back to
/// individual testing.
std::optional<NonAdaptivePlan> plan_nonadaptive(std::size_t n, double p, const NonAdaptiveConfig& cfg);

struct PoolDesign {
  std::size_t n = 0;
  std::vector<std::vector<std::size_t>> pools;
};

/// Each item joins each of plan.tests pools independently with probability
/// plan.inclusion. Pools that come out empty are dropped; they carry no
/// information and could not be queried.
PoolDesign sample_design(const NonAdaptivePlan& plan, Seed seed);

PoolDesign singleton_design(std::size_t n);

/// Queries every pool of the design, then decodes.
GtResult run_design(const PoolDesign& design, const ItemOracle& oracle, Decoder decoder);

std::vector<std::uint8_t> decode_comp(const PoolDesign& design, std::span<const std::uint8_t> outcomes);
std::vector<std::uint8_t> decode_dd(const PoolDesign& design, std::span<const std::uint8_t> outcomes);

struct NonAdaptiveResult {
  NonAdaptivePlan plan;
  std::optional<GtResult> result;  // empty when the plan was refused
};

NonAdaptiveResult nonadaptive_gt(std::size_t n, double p, const NonAdaptiveConfig& cfg, Seed seed,
                                 const ItemOracle& oracle);

// Lower bounds, in tests. All entropies in bits; values clamp at 0.

double entropy_lower_bound(std::size_t n, double p, double eps);
double strong_error_lower_bound(std::size_t n, double p, double delta, double eps);

struct StarBound {
  double value = 0.0;
  double unclamped = 0.0;
  double r_prime = 0.0;
};

/// n(1-delta)(H(r) + (1-r)H(p) - H(eps) - 1 + p(1-p)(1-r)H(r')),
/// r' = r / (r + (1-r)(p^2 + (1-p)^2)).
StarBound star_lower_bound(std::size_t n, double r, double p, double delta, double eps);

/// The strong-error bound with n replaced by an expected component count.
double component_scaled_strong_bound(double components, double p, double delta, double eps);

}  // namespace corrgt
