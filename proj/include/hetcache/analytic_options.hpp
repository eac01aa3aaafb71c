#pragma once

#include <cstddef>
#include <string_view>

namespace hetcache {

/// Which closed-form family to evaluate.
///  - General: load sums, serving-distance integrals, thermal noise.
///  - InterferenceLimited: noise dropped, the distance integral is closed form.
///  - MeanLoad: interference-limited and the load sums collapse to the mean load.
enum class Scenario { General, InterferenceLimited, MeanLoad };

/// How the tier power ratio enters the interference coefficients xi, varsigma, zeta.
///  - DerivationConsistent: (P_j/P_k)^(2/alpha), as in the Laplace transforms.
///  - AsPrinted: linear power ratios P_j/P_k.
enum class CoefficientMode { DerivationConsistent, AsPrinted };

/// How the average successful rate conditions on success.
///  - ConditionalMean: R0 + int P(R > r) / P(R > R0) dr, i.e. E[R | R >= R0].
///  - PerRealization: the success-probability ratio is taken inside the
///    serving-distance integral and load sum before averaging.
enum class RateAveraging { ConditionalMean, PerRealization };

struct AnalyticOptions {
  Scenario scenario = Scenario::InterferenceLimited;
  CoefficientMode coefficients = CoefficientMode::DerivationConsistent;
  RateAveraging rate_averaging = RateAveraging::ConditionalMean;
  double load_tail_eps = 1e-9;
  std::size_t load_hard_cap = 10000;
};

std::string_view to_string(Scenario s);
std::string_view to_string(CoefficientMode m);
std::string_view to_string(RateAveraging r);

}  // namespace hetcache
