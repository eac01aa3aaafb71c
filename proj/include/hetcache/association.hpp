#pragma once

#include <cstddef>
#include <vector>

#include "hetcache/analytic_options.hpp"
#include "hetcache/content_model.hpp"
#include "hetcache/network_config.hpp"

namespace hetcache {

/// Truncated distribution of the tagged BS load L (tagged user included).
/// prob[l] = P(L = l + 1).
struct LoadPmf {
  std::vector<double> prob;

  double mass() const;
  double mean() const;
  /// Largest load with retained mass.
  std::size_t max_load() const { return prob.size(); }
};

/// Content-centric association outcome for a typical user.
struct TierAssociation {
  double lp_mbs = 0.0;     // A_Lp,1: second-group request served by an MBS
  double lp_helper = 0.0;  // A_Lp,2
  double mbs = 0.0;        // A_1 = Q_Mp + Q_Lp A_Lp,1
  double helper = 0.0;     // A_2 = Q_Lp A_Lp,2
  double backhaul_ratio = 0.0;  // p_b = Q_Lp A_Lp,1 / A_1
};

struct AssociationStats {
  TierAssociation assoc;
  double helper_active_prob = 0.0;  // p_a
  LoadPmf load_mbs;
  LoadPmf load_helper;
  double mean_load_mbs = 1.0;
  double mean_load_helper = 1.0;
  unsigned backhaul_slots = 0;  // N_b
};

TierAssociation association_probabilities(const NetworkConfig& net, const ContentModel& cm);

/// Negative-binomial style load law of the tagged BS with ratio
/// c = assoc_prob * lambda_u / tier_density:
///   P(L = l+1) = 3.5^3.5 / l! * Gamma(l+4.5)/Gamma(3.5) * c^l * (3.5+c)^-(l+4.5).
/// Truncated at the first l_max whose cumulative mass reaches 1 - tail_eps.
/// Throws NumericalError if that needs more than hard_cap terms.
LoadPmf load_pmf(const NetworkConfig& net, double assoc_prob, double tier_density,
                 double tail_eps = 1e-9, std::size_t hard_cap = 10000);

/// Mean-load approximation 1 + 1.28 A_k lambda_u / lambda_k.
double mean_load(const NetworkConfig& net, double assoc_prob, double tier_density);

/// p_a = 1 - (1 + A_2 lambda_u / (3.5 lambda_2))^-3.5.
double active_probability(const NetworkConfig& net, double helper_assoc);

AssociationStats build_association_stats(const NetworkConfig& net, const ContentModel& cm,
                                         const AnalyticOptions& opts = {});

}  // namespace hetcache
