#include "hetcache/scdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "hetcache/numerics.hpp"
#include "hetcache/special_functions.hpp"

namespace hetcache {

std::string_view to_string(Scenario s) {
  switch (s) {
    case Scenario::General: return "general";
    case Scenario::InterferenceLimited: return "interference-limited";
    case Scenario::MeanLoad: return "mean-load";
  }
  return "?";
}

std::string_view to_string(CoefficientMode m) {
  return m == CoefficientMode::DerivationConsistent ? "derivation" : "printed";
}

std::string_view to_string(RateAveraging r) {
  return r == RateAveraging::ConditionalMean ? "conditional-mean" : "per-realization";
}

InterferenceCoefficients interference_coefficients(const NetworkConfig& net, const ContentModel& cm,
                                                   double helper_active_prob, CoefficientMode mode) {
  const double exponent = mode == CoefficientMode::DerivationConsistent ? 2.0 / net.path_loss_exponent : 1.0;
  const double p_lp = cm.helper_cache_probability();
  const double pa = helper_active_prob;
  const std::array<double, 2> power{net.mbs.tx_power_w, net.helper.tx_power_w};
  const std::array<double, 2> serving_density{net.mbs.density, p_lp * net.helper.density};

  InterferenceCoefficients c;
  for (std::size_t k = 0; k < 2; ++k) {
    if (serving_density[k] <= 0.0) continue;  // tier unreachable; coefficients unused
    const double mbs_w = net.mbs.density * std::pow(power[0] / power[k], exponent);
    const double helper_w = net.helper.density * std::pow(power[1] / power[k], exponent);
    c.xi[k] = (mbs_w + pa * p_lp * helper_w) / serving_density[k];
    c.varsigma[k] = pa * (1.0 - p_lp) * helper_w / serving_density[k];
    c.zeta[k] = (mbs_w + p_lp * helper_w) / serving_density[k];
  }
  return c;
}

double AccessLink::exponent_factor(double threshold, double alpha) const {
  if (std::isinf(threshold)) return std::numeric_limits<double>::infinity();
  double k = coef_0;
  if (coef_g != 0.0) k += coef_g * interference_g(threshold, alpha);
  if (coef_h != 0.0) k += coef_h * interference_h(threshold, alpha);
  return k;
}

double AccessLink::exponent_factor_diff(double x1, double x2, double alpha) const {
  if (std::isinf(x1)) return std::numeric_limits<double>::infinity();
  double k = coef_0;
  if (coef_g != 0.0) k += coef_g * interference_g_diff(x1, x2, alpha);
  if (coef_h != 0.0) k += coef_h * interference_h_diff(x1, x2, alpha);
  return k;
}

AccessLink first_group_link(const NetworkConfig& net, const AssociationStats& stats) {
  const double a = 2.0 / net.path_loss_exponent;
  AccessLink link;
  link.serving_density = net.mbs.density;
  link.tx_power_w = net.mbs.tx_power_w;
  link.coef_g = 1.0;
  link.coef_h = stats.helper_active_prob * (net.helper.density / net.mbs.density) *
                std::pow(net.helper.tx_power_w / net.mbs.tx_power_w, a);
  link.coef_0 = 1.0;
  link.assoc_prob = 1.0;
  return link;
}

AccessLink second_group_link(const NetworkConfig& net, const ContentModel& cm,
                             const InterferenceCoefficients& coeffs, Tier tier,
                             const AssociationStats& stats) {
  const std::size_t k = tier == Tier::Mbs ? 0 : 1;
  AccessLink link;
  link.serving_density =
      tier == Tier::Mbs ? net.mbs.density : cm.helper_cache_probability() * net.helper.density;
  link.tx_power_w = net.tier(tier).tx_power_w;
  link.coef_g = coeffs.xi[k];
  link.coef_h = coeffs.varsigma[k];
  link.coef_0 = coeffs.zeta[k];
  link.assoc_prob = tier == Tier::Mbs ? stats.assoc.lp_mbs : stats.assoc.lp_helper;
  return link;
}

std::vector<LoadPoint> load_points(const LoadPmf& pmf, double mean_load, Scenario scenario) {
  if (scenario == Scenario::MeanLoad) return {{mean_load, 1.0}};
  std::vector<LoadPoint> pts;
  pts.reserve(pmf.prob.size());
  for (std::size_t l = 0; l < pmf.prob.size(); ++l)
    pts.push_back({static_cast<double>(l + 1), pmf.prob[l]});
  return pts;
}

double equivalent_threshold(double load, double rate_bps, double bandwidth_hz) {
  const double e = load * rate_bps / bandwidth_hz;
  if (e >= 1023.0) return std::numeric_limits<double>::infinity();
  return std::expm1(e * std::numbers::ln2);
}

bool scenario_has_noise(const NetworkConfig& net, Scenario scenario) {
  return scenario == Scenario::General && net.noise_power_w > 0.0;
}

double distance_integral(const NetworkConfig& net, const AccessLink& link, double exponent_factor,
                         double noise_threshold, bool with_noise) {
  if (!std::isfinite(exponent_factor)) return 0.0;
  if (!with_noise || noise_threshold <= 0.0) return 1.0 / exponent_factor;
  if (std::isinf(noise_threshold)) return 0.0;

  // u = pi lambda' z^2 turns the PDF into a unit exponential weight:
  //   int_0^inf exp(-K u - a u^(alpha/2)) du.
  const double half_alpha = net.path_loss_exponent / 2.0;
  const double a = noise_threshold * net.noise_power_w /
                   (link.tx_power_w * std::pow(std::numbers::pi * link.serving_density, half_alpha));
  if (!std::isfinite(a)) return 0.0;
  // Rescale so that whichever exponent bites first reaches 1 at w = 1.
  const double scale = std::min(1.0 / exponent_factor, std::pow(a, -1.0 / half_alpha));
  const double kw = exponent_factor * scale;
  const double aw = a * std::pow(scale, half_alpha);
  auto integrand = [&](double w) { return std::exp(-kw * w - aw * std::pow(w, half_alpha)); };
  const double inf = std::numeric_limits<double>::infinity();
  return scale * numerics::integrate(integrand, 0.0, inf, 1e-13, 1e-11).value;
}

double link_success(const NetworkConfig& net, const AccessLink& link,
                    const std::vector<LoadPoint>& points, double rate_bps, bool with_noise) {
  if (link.serving_density <= 0.0) return 0.0;
  double total = 0.0;
  for (const LoadPoint& pt : points) {
    const double delta = equivalent_threshold(pt.load, rate_bps, net.bandwidth_hz);
    if (std::isinf(delta)) continue;  // success probability underflows to zero
    const double k = link.exponent_factor(delta, net.path_loss_exponent);
    if (pt.weight / k < 1e-15) continue;
    total += pt.weight * distance_integral(net, link, k, delta, with_noise);
  }
  return total;
}

double sadp_mp(const NetworkConfig& net, const AssociationStats& stats, Scenario scenario) {
  const AccessLink link = first_group_link(net, stats);
  const auto pts = load_points(stats.load_mbs, stats.mean_load_mbs, scenario);
  return link_success(net, link, pts, net.rate_demand_bps, scenario_has_noise(net, scenario));
}

double sadp_lp2(const NetworkConfig& net, const ContentModel& cm, const AssociationStats& stats,
                const AnalyticOptions& opts) {
  if (cm.helper_cache_probability() <= 0.0) return 0.0;
  const auto coeffs = interference_coefficients(net, cm, stats.helper_active_prob, opts.coefficients);
  const AccessLink link = second_group_link(net, cm, coeffs, Tier::Helper, stats);
  const auto pts = load_points(stats.load_helper, stats.mean_load_helper, opts.scenario);
  return link_success(net, link, pts, net.rate_demand_bps, scenario_has_noise(net, opts.scenario));
}

double sadp_lp1_w(const NetworkConfig& net, const ContentModel& cm, const AssociationStats& stats,
                  const AnalyticOptions& opts) {
  const auto coeffs = interference_coefficients(net, cm, stats.helper_active_prob, opts.coefficients);
  const AccessLink link = second_group_link(net, cm, coeffs, Tier::Mbs, stats);
  const auto pts = load_points(stats.load_mbs, stats.mean_load_mbs, opts.scenario);
  return link_success(net, link, pts, net.rate_demand_bps, scenario_has_noise(net, opts.scenario));
}

double sbdp_given_load(std::size_t other_users, double backhaul_ratio, unsigned backhaul_slots) {
  if (backhaul_slots == 0) return 0.0;
  if (static_cast<std::size_t>(backhaul_slots) >= other_users + 1) return 1.0;
  const auto binom = numerics::binomial_pmf(other_users, backhaul_ratio);
  const double slots = static_cast<double>(backhaul_slots);
  double p = 0.0;
  for (std::size_t m = 0; m <= other_users; ++m)
    p += binom[m] * std::min(1.0, slots / static_cast<double>(m + 1));
  return p;
}

double sbdp(const LoadPmf& mbs_load, double backhaul_ratio, unsigned backhaul_slots) {
  double p = 0.0;
  for (std::size_t l = 0; l < mbs_load.prob.size(); ++l)
    p += mbs_load.prob[l] * sbdp_given_load(l, backhaul_ratio, backhaul_slots);
  return p;
}

double sbdp_mean_load(double mean_load_mbs, double backhaul_ratio, unsigned backhaul_slots) {
  const auto load = static_cast<std::size_t>(std::max(1.0, std::round(mean_load_mbs)));
  return sbdp_given_load(load - 1, backhaul_ratio, backhaul_slots);
}

ScdpBreakdown scdp(const NetworkConfig& net, const ContentModel& cm, const AssociationStats& stats,
                   const AnalyticOptions& opts) {
  ScdpBreakdown b;
  b.c_mp = sadp_mp(net, stats, opts.scenario);
  b.c_lp2 = sadp_lp2(net, cm, stats, opts);
  b.c_lp1_w = sadp_lp1_w(net, cm, stats, opts);
  b.c_lp1_b = opts.scenario == Scenario::MeanLoad
                  ? sbdp_mean_load(stats.mean_load_mbs, stats.assoc.backhaul_ratio, stats.backhaul_slots)
                  : sbdp(stats.load_mbs, stats.assoc.backhaul_ratio, stats.backhaul_slots);
  const double q_mp = cm.first_group_mass();
  const double q_lp = cm.second_group_mass();
  b.total = q_mp * b.c_mp + q_lp * b.c_lp2 + q_lp * b.c_lp1_w * b.c_lp1_b;
  return b;
}

}  // namespace hetcache
