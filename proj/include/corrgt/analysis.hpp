#pragma once

#include <cstddef>

namespace corrgt::analysis {

/// Truncated series value with a rigorous bound on the omitted tail.
struct SeriesResult {
  double value = 0.0;
  std::size_t terms_used = 0;
  double tail_bound = 0.0;
  bool converged = false;
};

inline constexpr std::size_t kMaxSeriesTerms = 1'000'000;

/// Binary entropy in bits, with H(0) = H(1) = 0.
double binary_entropy(double p);

/// P(|C(v)| = t) for the root of the edge-faulty infinite tree in which every
/// node has d children:
///   1/((d-1)t+1) * C(dt, t) * r^(t-1) * (1-r)^((d-1)t+1).
/// Evaluated in log space, stable for t up to ~1e4 and beyond.
double component_pmf(int d, double r, std::size_t t);

/// Order-d Fuss-Catalan number 1/((d-1)t+1) * C(dt, t), as a double.
double fuss_catalan(int d, std::size_t t);

/// Probability that the root of the 3-children tree process lies in an
/// infinite component: 0 for r <= 1/3, else (3r - sqrt(r(4-3r))) / (2r^2).
double p_infinity(double r);

/// Partial sum of component_pmf(d, r, t) over t >= 1, stopped once the
/// geometric tail bound drops below tol. Converges to 1 - P_inf.
SeriesResult pmf_partial_sum(int d, double r, double tol);

/// Expected root component size sum_t t * component_pmf(3, r, t).
/// Defined only for r < 1/3; throws DomainError otherwise.
SeriesResult expected_component_size(double r, double tol);

/// n / E|C(v)|: lower bound on the expected component count of an n-node grid
/// (r < 1/3).
double grid_components_lower_bound(std::size_t n, double r, double tol = 1e-12);

enum class LineFamily { cycle, tree };

/// Closed forms 1 + (1-r)(n-1) for trees and (1-r)n for cycles.
double line_expectation(LineFamily family, std::size_t n, double r);

/// Azuma envelope lambda * sqrt(m) with lambda = sqrt(2 ln(2/delta)).
double azuma_deviation(std::size_t m, double delta);

struct GridConnectivity {
  double value = 1.0;     // recursion lower estimate of P_k
  double exponent = 0.0;  // sum_{j=2..k} (2(j-1)(1-r) + 1)
};

/// P_k >= P_{k-1} * r^(2(k-1)(1-r)+1), P_1 = 1. Heuristic: the o(rk) term of
/// the subpath count is dropped, so this is a lower estimate validated
/// against enumeration and Monte Carlo rather than a proven bound.
GridConnectivity grid_connectivity_lower(std::size_t k, double r);

}  // namespace corrgt::analysis
