#pragma once

#include <array>
#include <vector>

#include "hetcache/analytic_options.hpp"
#include "hetcache/association.hpp"
#include "hetcache/content_model.hpp"
#include "hetcache/network_config.hpp"

namespace hetcache {

/// Interference coefficients for a second-group request served by tier k
/// (index 0 = MBS, 1 = helper). The success exponent for serving distance z
/// reads -pi lambda'_k z^2 (xi_k G + varsigma_k H + zeta_k).
struct InterferenceCoefficients {
  std::array<double, 2> xi{};
  std::array<double, 2> varsigma{};
  std::array<double, 2> zeta{};
};

InterferenceCoefficients interference_coefficients(const NetworkConfig& net, const ContentModel& cm,
                                                   double helper_active_prob,
                                                   CoefficientMode mode = CoefficientMode::DerivationConsistent);

/// A serving link after the serving-distance PDF has been folded in.
/// `serving_density` is the density of the PDF (lambda_1 or p_Lp lambda_2);
/// `assoc_prob` is the probability mass the PDF carries (1 for first-group
/// requests, A_Lp,k otherwise).
struct AccessLink {
  double serving_density = 0.0;
  double tx_power_w = 0.0;
  double coef_g = 0.0;
  double coef_h = 0.0;
  double coef_0 = 1.0;
  double assoc_prob = 1.0;

  /// coef_g G(x) + coef_h H(x) + coef_0.
  double exponent_factor(double threshold, double alpha) const;
  /// Same factor built from G(x1)-G(x2), H(x1)-H(x2).
  double exponent_factor_diff(double x1, double x2, double alpha) const;
};

AccessLink first_group_link(const NetworkConfig& net, const AssociationStats& stats);
AccessLink second_group_link(const NetworkConfig& net, const ContentModel& cm,
                             const InterferenceCoefficients& coeffs, Tier tier,
                             const AssociationStats& stats);

/// One evaluation point of the load average: load L (tagged user included)
/// and its probability weight.
struct LoadPoint {
  double load = 1.0;
  double weight = 1.0;
};

/// General / InterferenceLimited: the truncated pmf. MeanLoad: the single mean load.
std::vector<LoadPoint> load_points(const LoadPmf& pmf, double mean_load, Scenario scenario);

/// 2^(L r / W) - 1; +inf once it overflows.
double equivalent_threshold(double load, double rate_bps, double bandwidth_hz);

/// int_0^inf 2 pi lambda' z exp(-z^alpha x sigma^2 / P) exp(-pi lambda' z^2 K) dz,
/// with the noise threshold x. Exactly 1/K when the noise term vanishes.
double distance_integral(const NetworkConfig& net, const AccessLink& link, double exponent_factor,
                         double noise_threshold, bool with_noise);

/// Load-averaged access success probability at rate demand `rate_bps`.
double link_success(const NetworkConfig& net, const AccessLink& link,
                    const std::vector<LoadPoint>& points, double rate_bps, bool with_noise);

struct ScdpBreakdown {
  double c_mp = 0.0;      // SADP, first group (conditional, A_Mp,1 = 1)
  double c_lp2 = 0.0;     // SADP, second group via helper (joint with A_Lp,2)
  double c_lp1_w = 0.0;   // SADP, second group via MBS access link (joint with A_Lp,1)
  double c_lp1_b = 0.0;   // SBDP
  double total = 0.0;
};

double sadp_mp(const NetworkConfig& net, const AssociationStats& stats, Scenario scenario);
double sadp_lp2(const NetworkConfig& net, const ContentModel& cm, const AssociationStats& stats,
                const AnalyticOptions& opts);
double sadp_lp1_w(const NetworkConfig& net, const ContentModel& cm, const AssociationStats& stats,
                  const AnalyticOptions& opts);

/// Backhaul success for a tagged cache-miss user sharing the MBS with
/// `other_users` others, each a cache miss with probability p_b:
///   sum_m Binom(other_users, m) min(1, N_b / (m + 1)).
double sbdp_given_load(std::size_t other_users, double backhaul_ratio, unsigned backhaul_slots);
double sbdp(const LoadPmf& mbs_load, double backhaul_ratio, unsigned backhaul_slots);
/// Mean-load form: the mean load is rounded to the nearest integer >= 1.
double sbdp_mean_load(double mean_load_mbs, double backhaul_ratio, unsigned backhaul_slots);

ScdpBreakdown scdp(const NetworkConfig& net, const ContentModel& cm, const AssociationStats& stats,
                   const AnalyticOptions& opts);

/// Noise only enters the General scenario.
bool scenario_has_noise(const NetworkConfig& net, Scenario scenario);

}  // namespace hetcache
