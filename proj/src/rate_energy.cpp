#include "hetcache/rate_energy.hpp"

#include <algorithm>
#include <cmath>

#include "hetcache/errors.hpp"
#include "hetcache/numerics.hpp"

namespace hetcache {

namespace {

// Outer integral over [R0, inf): spans doubling in length until a span adds
// less than 1e-6 of the running total. Hard stop at 64 W.
double integrate_rate_tail(const std::function<double(double)>& f, double r0, double bandwidth) {
  const double r_max = 64.0 * bandwidth;
  double lo = r0;
  double span = r0;
  double total = 0.0;
  while (lo < r_max) {
    const double hi = std::min(lo + span, r_max);
    const double part = numerics::integrate(f, lo, hi, 1e-12 * r0, 1e-9).value;
    total += part;
    if (part <= 1e-6 * total) break;
    lo = hi;
    span *= 2.0;
  }
  return total;
}

}  // namespace

double excess_rate(const NetworkConfig& net, const AccessLink& link,
                   const std::vector<LoadPoint>& points, bool with_noise, RateAveraging averaging) {
  if (link.serving_density <= 0.0) return 0.0;
  const double r0 = net.rate_demand_bps;
  const double alpha = net.path_loss_exponent;
  const double w = net.bandwidth_hz;

  if (averaging == RateAveraging::ConditionalMean) {
    const double base = link_success(net, link, points, r0, with_noise);
    if (base <= 0.0) return 0.0;
    auto ratio = [&](double r) { return link_success(net, link, points, r, with_noise) / base; };
    return link.assoc_prob * integrate_rate_tail(ratio, r0, w);
  }

  // Per-realization ratio: the serving-distance exponent keeps coef_0 and
  // picks up G(x_r) - G(x_0), H(x_r) - H(x_0); noise enters through x_r - x_0.
  std::vector<LoadPoint> kept;
  std::vector<double> base_threshold;
  for (const LoadPoint& pt : points) {
    const double d = equivalent_threshold(pt.load, r0, w);
    if (std::isinf(d) || pt.weight <= 0.0) continue;
    kept.push_back(pt);
    base_threshold.push_back(d);
  }
  auto integrand = [&](double r) {
    double s = 0.0;
    for (std::size_t i = 0; i < kept.size(); ++i) {
      const double dr = equivalent_threshold(kept[i].load, r, w);
      if (std::isinf(dr)) continue;
      const double k = link.exponent_factor_diff(dr, base_threshold[i], alpha);
      if (kept[i].weight / k < 1e-15) continue;
      s += kept[i].weight * distance_integral(net, link, k, dr - base_threshold[i], with_noise);
    }
    return s;
  };
  return integrate_rate_tail(integrand, r0, w);
}

double avg_rate_mp1(const NetworkConfig& net, const AssociationStats& stats,
                    const AnalyticOptions& opts) {
  const AccessLink link = first_group_link(net, stats);
  const auto pts = load_points(stats.load_mbs, stats.mean_load_mbs, opts.scenario);
  return net.rate_demand_bps +
         excess_rate(net, link, pts, scenario_has_noise(net, opts.scenario), opts.rate_averaging);
}

double avg_rate_lp2(const NetworkConfig& net, const ContentModel& cm, const AssociationStats& stats,
                    const AnalyticOptions& opts) {
  if (cm.helper_cache_probability() <= 0.0) return 0.0;
  const auto coeffs = interference_coefficients(net, cm, stats.helper_active_prob, opts.coefficients);
  const AccessLink link = second_group_link(net, cm, coeffs, Tier::Helper, stats);
  const auto pts = load_points(stats.load_helper, stats.mean_load_helper, opts.scenario);
  return stats.assoc.lp_helper * net.rate_demand_bps +
         excess_rate(net, link, pts, scenario_has_noise(net, opts.scenario), opts.rate_averaging);
}

RateBreakdown avg_rate_total(const NetworkConfig& net, const ContentModel& cm,
                             const AssociationStats& stats, const ScdpBreakdown& scdp,
                             const AnalyticOptions& opts) {
  RateBreakdown r;
  const double q_mp = cm.first_group_mass();
  const double q_lp = cm.second_group_mass();
  if (q_mp > 0.0) r.r_mp1 = avg_rate_mp1(net, stats, opts);
  if (q_lp > 0.0) r.r_lp2 = avg_rate_lp2(net, cm, stats, opts);
  // c_lp1_w is already joint with A_Lp,1, so A_Lp,1 times the conditional form.
  r.r_total = q_mp * r.r_mp1 + q_lp * r.r_lp2 + q_lp * scdp.c_lp1_w * scdp.c_lp1_b * net.rate_demand_bps;
  return r;
}

namespace {

double usage_given_load(std::size_t load, double backhaul_ratio, unsigned backhaul_slots) {
  if (backhaul_ratio <= 0.0) return 0.0;
  const auto binom = numerics::binomial_pmf(load, backhaul_ratio);
  const double slots = static_cast<double>(backhaul_slots);
  double u = 0.0;
  for (std::size_t m = 1; m <= load; ++m)
    u += binom[m] * (backhaul_slots == 0 ? 1.0 : std::min(1.0, static_cast<double>(m) / slots));
  return u;
}

}  // namespace

double backhaul_usage(const LoadPmf& mbs_load, double backhaul_ratio, unsigned backhaul_slots) {
  double u = 0.0;
  for (std::size_t l = 0; l < mbs_load.prob.size(); ++l)
    u += mbs_load.prob[l] * usage_given_load(l + 1, backhaul_ratio, backhaul_slots);
  return u;
}

double backhaul_usage_mean_load(double mean_load_mbs, double backhaul_ratio,
                                unsigned backhaul_slots) {
  const auto load = static_cast<std::size_t>(std::max(1.0, std::round(mean_load_mbs)));
  return usage_given_load(load, backhaul_ratio, backhaul_slots);
}

PowerBreakdown power_model(const NetworkConfig& net, const ContentModel& cm,
                           const AssociationStats& stats, Scenario scenario) {
  PowerBreakdown p;
  const double bits = cm.config().content_size_bits;
  const std::array<double, 2> active{1.0, stats.helper_active_prob};
  const std::array<double, 2> cached{static_cast<double>(cm.config().mbs_cache_size),
                                     static_cast<double>(cm.config().helper_cache_size)};
  for (std::size_t k = 0; k < 2; ++k) {
    const TierParams& t = net.tier(static_cast<Tier>(k));
    p.tier[k].bs = t.amplifier_coeff * active[k] * t.tx_power_w + t.circuit_power_w;
    p.tier[k].cache = net.cache_power_w_per_bit * cached[k] * bits;
  }
  const double usage =
      scenario == Scenario::MeanLoad
          ? backhaul_usage_mean_load(stats.mean_load_mbs, stats.assoc.backhaul_ratio, stats.backhaul_slots)
          : backhaul_usage(stats.load_mbs, stats.assoc.backhaul_ratio, stats.backhaul_slots);
  p.tier[0].backhaul = net.backhaul_power_w_per_bps * net.backhaul_capacity_bps * usage;
  p.area_total = net.mbs.density * p.tier[0].per_bs() + net.helper.density * p.tier[1].per_bs();
  return p;
}

EnergyReport energy_efficiency(const NetworkConfig& net, double scdp_total, double rate_total,
                               const PowerBreakdown& power) {
  EnergyReport e;
  e.power = power;
  e.throughput = net.user_density * scdp_total * rate_total;
  e.ee = power.area_total > 0.0 ? e.throughput / power.area_total : 0.0;
  return e;
}

}  // namespace hetcache
