#include "hetcache/numerics.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <sstream>

#include "hetcache/errors.hpp"

namespace hetcache::numerics {

QuadratureResult integrate(const std::function<double(double)>& f, double lo, double hi,
                           double abs_tol, double rel_tol, unsigned max_depth) {
  QuadratureResult out;
  if (lo == hi) return out;
  double l1 = 0.0;
  out.value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      f, lo, hi, max_depth, rel_tol, &out.error_estimate, &l1);
  if (!std::isfinite(out.value))
    throw NumericalError("quadrature produced a non-finite value");
  const double budget = std::max(abs_tol, rel_tol * std::abs(out.value));
  // Boost stops at max_depth silently; the caller gets an error when the
  // estimate is clearly outside the requested budget.
  if (out.error_estimate > 100.0 * budget) {
    std::ostringstream msg;
    msg << "quadrature on [" << lo << ", " << hi << "] did not converge: value " << out.value
        << ", error estimate " << out.error_estimate;
    throw NumericalError(msg.str());
  }
  return out;
}

std::vector<double> binomial_pmf(std::size_t n, double p) {
  std::vector<double> pmf(n + 1, 0.0);
  if (p <= 0.0) {
    pmf[0] = 1.0;
    return pmf;
  }
  if (p >= 1.0) {
    pmf[n] = 1.0;
    return pmf;
  }
  const double lp = std::log(p);
  const double lq = std::log1p(-p);
  const double lfn = std::lgamma(static_cast<double>(n) + 1.0);
  for (std::size_t k = 0; k <= n; ++k) {
    const double kk = static_cast<double>(k);
    const double log_term = lfn - std::lgamma(kk + 1.0) - std::lgamma(static_cast<double>(n - k) + 1.0) +
                            kk * lp + static_cast<double>(n - k) * lq;
    pmf[k] = std::exp(log_term);
  }
  return pmf;
}

Interval wilson_interval(std::size_t successes, std::size_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (phat + z2 / (2.0 * n)) / denom;
  const double spread = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
  return {std::max(0.0, centre - spread), std::min(1.0, centre + spread)};
}

}  // namespace hetcache::numerics
