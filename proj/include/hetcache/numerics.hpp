#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace hetcache::numerics {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
};

/// Adaptive Gauss-Kronrod (15-point) over [lo, hi]; hi may be +infinity.
/// Throws NumericalError when the error estimate stays above
/// max(abs_tol, rel_tol * |value|) after max_depth bisections.
QuadratureResult integrate(const std::function<double(double)>& f, double lo, double hi,
                           double abs_tol, double rel_tol, unsigned max_depth = 18);

/// Binomial(n, p) probabilities for k = 0..n, evaluated in log space.
std::vector<double> binomial_pmf(std::size_t n, double p);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double half_width() const { return 0.5 * (hi - lo); }
};

/// Wilson score interval for a binomial proportion.
Interval wilson_interval(std::size_t successes, std::size_t trials, double z = 1.959963984540054);

}  // namespace hetcache::numerics
