#include "hetcache/special_functions.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "hetcache/errors.hpp"

namespace hetcache {

namespace {

constexpr int kMaxTerms = 10000;
constexpr double kSeriesTol = 1e-16;

// sum_n (beta)_n / (gamma)_n y^n, i.e. 2F1(1, beta; gamma; y) as a plain series.
double series_1b(double beta, double gamma, double y) {
  double term = 1.0;
  double sum = 1.0;
  for (int n = 0; n < kMaxTerms; ++n) {
    term *= (beta + n) / (gamma + n) * y;
    sum += term;
    if (std::abs(term) < kSeriesTol * std::abs(sum)) return sum;
  }
  throw NumericalError("2F1(1," + std::to_string(beta) + ";" + std::to_string(gamma) + ";" +
                       std::to_string(y) + ") series did not converge in 10000 terms");
}

void check_alpha(double alpha) {
  if (!(alpha > 2.0) || !std::isfinite(alpha))
    throw ConfigError("path-loss exponent must exceed 2, got " + std::to_string(alpha));
}

}  // namespace

double hyp2f1_1b(double b, double c, double z) {
  if (!(b > 0.0) || !(c > b)) throw ConfigError("hyp2f1_1b requires c > b > 0");
  if (z > 0.0 || std::isnan(z)) throw ConfigError("hyp2f1_1b requires z <= 0");
  if (z == 0.0) return 1.0;
  if (std::isinf(z)) return 0.0;

  if (z >= -0.5) return series_1b(b, c, z);

  if (z >= -2.0 || !(b < 1.0)) {
    // Pfaff: 2F1(a,b;c;z) = (1-z)^-a 2F1(a, c-b; c; z/(z-1)).
    const double w = z / (z - 1.0);
    return series_1b(c - b, c, w) / (1.0 - z);
  }

  // Connection around infinity with a = 1. The second hypergeometric factor
  // collapses to (1 - 1/z)^(c-b-1) because its upper and lower parameters match.
  const double y = 1.0 / z;
  const double first = (c - 1.0) / (b - 1.0) * (1.0 / -z) * series_1b(2.0 - c, 2.0 - b, y);
  const double coeff = std::exp(std::lgamma(c) + std::lgamma(1.0 - b) - std::lgamma(c - b));
  const double second = coeff * std::pow(-z, -b) * std::pow(1.0 - y, c - b - 1.0);
  return first + second;
}

double interference_h(double x, double alpha) {
  check_alpha(alpha);
  if (x < 0.0 || std::isnan(x)) throw ConfigError("interference_h requires x >= 0");
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return std::numeric_limits<double>::infinity();
  const double a = 2.0 / alpha;
  const double beta = std::exp(std::lgamma(a) + std::lgamma(1.0 - a));  // B(a, 1-a), Gamma(1) = 1
  return a * std::pow(x, a) * beta;
}

double interference_g(double x, double alpha) {
  check_alpha(alpha);
  if (x < 0.0 || std::isnan(x)) throw ConfigError("interference_g requires x >= 0");
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return std::numeric_limits<double>::infinity();
  const double a = 2.0 / alpha;
  if (x <= 2.0) return 2.0 * x / (alpha - 2.0) * hyp2f1_1b(1.0 - a, 2.0 - a, -x);
  // For large thresholds G is the whole-plane term minus the contribution from
  // inside the unit disk; this avoids forming 2x/(alpha-2) for huge x.
  return interference_h(x, alpha) - hyp2f1_1b(a, 1.0 + a, -1.0 / x);
}

double interference_g_diff(double x1, double x2, double alpha) {
  if (x1 < x2) throw ConfigError("interference_g_diff requires x1 >= x2");
  if (x1 == x2) return 0.0;
  return interference_g(x1, alpha) - interference_g(x2, alpha);
}

double interference_h_diff(double x1, double x2, double alpha) {
  if (x1 < x2) throw ConfigError("interference_h_diff requires x1 >= x2");
  if (x1 == x2) return 0.0;
  return interference_h(x1, alpha) - interference_h(x2, alpha);
}

}  // namespace hetcache
