#include "corrgt/analysis.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "corrgt/errors.hpp"

namespace corrgt::analysis {
namespace {

double log_fuss_catalan(int d, std::size_t t) {
  const double dt = static_cast<double>(d) * static_cast<double>(t);
  const double tt = static_cast<double>(t);
  // (dt)! / (t! ((d-1)t + 1)!)
  return std::lgamma(dt + 1.0) - std::lgamma(tt + 1.0) - std::lgamma(dt - tt + 2.0);
}

// Upper bound on the ratio of consecutive Fuss-Catalan numbers,
// d^d / (d-1)^(d-1), times the per-node factor r(1-r)^(d-1).
double pmf_ratio_bound(int d, double r) {
  const double dd = static_cast<double>(d);
  return std::pow(dd, dd) / std::pow(dd - 1.0, dd - 1.0) * r * std::pow(1.0 - r, dd - 1.0);
}

void check_arity(int d) { require(d >= 2, "tree arity d must be >= 2"); }

}  // namespace

double binary_entropy(double p) {
  require_probability(p, "p");
  if (p == 0.0 || p == 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double fuss_catalan(int d, std::size_t t) {
  check_arity(d);
  return std::exp(log_fuss_catalan(d, t));
}

double component_pmf(int d, double r, std::size_t t) {
  check_arity(d);
  require_probability(r, "r");
  require(t >= 1, "component size t must be >= 1");
  if (r == 0.0) return t == 1 ? 1.0 : 0.0;
  if (r == 1.0) return 0.0;
  const double tt = static_cast<double>(t);
  const double log_p = log_fuss_catalan(d, t) + (tt - 1.0) * std::log(r) +
                       ((static_cast<double>(d) - 1.0) * tt + 1.0) * std::log1p(-r);
  return std::exp(log_p);
}

double p_infinity(double r) {
  require_probability(r, "r");
  if (r <= 1.0 / 3.0) return 0.0;
  return (3.0 * r - std::sqrt(r * (4.0 - 3.0 * r))) / (2.0 * r * r);
}

SeriesResult pmf_partial_sum(int d, double r, double tol) {
  check_arity(d);
  require_probability(r, "r");
  require(tol > 0.0, "tolerance must be positive");
  SeriesResult out;
  if (r == 0.0 || r == 1.0) {
    out.value = r == 0.0 ? 1.0 : 0.0;
    out.terms_used = 1;
    out.converged = true;
    return out;
  }
  const double rho = pmf_ratio_bound(d, r);
  double sum = 0.0;
  for (std::size_t t = 1; t <= kMaxSeriesTerms; ++t) {
    sum += component_pmf(d, r, t);
    out.terms_used = t;
    if (rho < 1.0) {
      // Every later term shrinks by at least rho.
      out.tail_bound = component_pmf(d, r, t + 1) / (1.0 - rho);
      if (out.tail_bound <= tol) {
        out.converged = true;
        break;
      }
    } else {
      out.tail_bound = std::numeric_limits<double>::infinity();
    }
  }
  out.value = sum;
  return out;
}

SeriesResult expected_component_size(double r, double tol) {
  require_probability(r, "r");
  require(tol > 0.0, "tolerance must be positive");
  if (r >= 1.0 / 3.0)
    throw DomainError("expected component size series needs r < 1/3 (27/4 r (1-r)^2 < 1), got r = " +
                      std::to_string(r));
  SeriesResult out;
  if (r == 0.0) {
    out.value = 1.0;
    out.terms_used = 1;
    out.converged = true;
    return out;
  }
  const double rho = pmf_ratio_bound(3, r);
  double sum = 0.0;
  for (std::size_t t = 1; t <= kMaxSeriesTerms; ++t) {
    sum += static_cast<double>(t) * component_pmf(3, r, t);
    out.terms_used = t;
    // For s > t, (s+1) a_{s+1} / (s a_s) <= (1 + 1/(t+1)) rho =: q.
    const double q = (1.0 + 1.0 / static_cast<double>(t + 1)) * rho;
    if (q < 1.0) {
      out.tail_bound = static_cast<double>(t + 1) * component_pmf(3, r, t + 1) / (1.0 - q);
      if (out.tail_bound <= tol) {
        out.converged = true;
        break;
      }
    } else {
      out.tail_bound = std::numeric_limits<double>::infinity();
    }
  }
  out.value = sum;
  return out;
}

double grid_components_lower_bound(std::size_t n, double r, double tol) {
  require(n >= 1, "n must be >= 1");
  const auto size = expected_component_size(r, tol);
  return static_cast<double>(n) / size.value;
}

double line_expectation(LineFamily family, std::size_t n, double r) {
  require_probability(r, "r");
  const double nn = static_cast<double>(n);
  if (family == LineFamily::cycle) {
    require(n >= 3, "cycle requires n >= 3");
    return (1.0 - r) * nn;
  }
  require(n >= 1, "tree requires n >= 1");
  return 1.0 + (1.0 - r) * (nn - 1.0);
}

double azuma_deviation(std::size_t m, double delta) {
  require(m >= 1, "edge count m must be >= 1");
  require(delta > 0.0 && delta < 1.0, "delta must lie in (0, 1)");
  const double lambda = std::sqrt(2.0 * std::log(2.0 / delta));
  return lambda * std::sqrt(static_cast<double>(m));
}

GridConnectivity grid_connectivity_lower(std::size_t k, double r) {
  require(k >= 1, "subgrid side k must be >= 1");
  require(r > 0.0 && r <= 1.0, "r must lie in (0, 1]");
  GridConnectivity out;
  for (std::size_t j = 2; j <= k; ++j)
    out.exponent += 2.0 * static_cast<double>(j - 1) * (1.0 - r) + 1.0;
  out.value = std::pow(r, out.exponent);
  return out;
}

}  // namespace corrgt::analysis
