#include "hetcache/association.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "hetcache/errors.hpp"

namespace hetcache {

double LoadPmf::mass() const { return std::accumulate(prob.begin(), prob.end(), 0.0); }

double LoadPmf::mean() const {
  double m = 0.0;
  for (std::size_t l = 0; l < prob.size(); ++l) m += static_cast<double>(l + 1) * prob[l];
  return m;
}

TierAssociation association_probabilities(const NetworkConfig& net, const ContentModel& cm) {
  const double a = 2.0 / net.path_loss_exponent;
  const double w_mbs = net.mbs.density * std::pow(net.mbs.tx_power_w, a);
  const double w_helper =
      cm.helper_cache_probability() * net.helper.density * std::pow(net.helper.tx_power_w, a);

  TierAssociation t;
  t.lp_mbs = w_mbs / (w_mbs + w_helper);
  t.lp_helper = w_helper / (w_mbs + w_helper);
  const double q_mp = cm.first_group_mass();
  const double q_lp = cm.second_group_mass();
  t.mbs = q_mp + q_lp * t.lp_mbs;
  t.helper = q_lp * t.lp_helper;
  t.backhaul_ratio = t.mbs > 0.0 ? q_lp * t.lp_mbs / t.mbs : 0.0;
  return t;
}

LoadPmf load_pmf(const NetworkConfig& net, double assoc_prob, double tier_density, double tail_eps,
                 std::size_t hard_cap) {
  if (!(tail_eps > 0.0 && tail_eps <= 1e-6))
    throw ConfigError("load pmf tail_eps must lie in (0, 1e-6]");
  const double c = assoc_prob * net.user_density / tier_density;
  LoadPmf pmf;
  if (c <= 0.0) {
    pmf.prob = {1.0};
    return pmf;
  }
  constexpr double shape = 3.5;
  const double log_head = shape * std::log(shape) - std::lgamma(shape);
  const double log_c = std::log(c);
  const double log_sc = std::log(shape + c);
  double cumulative = 0.0;
  for (std::size_t l = 0; l < hard_cap; ++l) {
    const double ld = static_cast<double>(l);
    const double log_p = log_head + std::lgamma(ld + shape + 1.0) - std::lgamma(ld + 1.0) +
                         ld * log_c - (ld + shape + 1.0) * log_sc;
    const double p = std::exp(log_p);
    pmf.prob.push_back(p);
    cumulative += p;
    if (cumulative >= 1.0 - tail_eps) return pmf;
  }
  throw NumericalError("load pmf with ratio " + std::to_string(c) + " needs more than " +
                       std::to_string(hard_cap) + " terms");
}

double mean_load(const NetworkConfig& net, double assoc_prob, double tier_density) {
  return 1.0 + 1.28 * assoc_prob * net.user_density / tier_density;
}

double active_probability(const NetworkConfig& net, double helper_assoc) {
  return 1.0 - std::pow(1.0 + helper_assoc * net.user_density / (3.5 * net.helper.density), -3.5);
}

AssociationStats build_association_stats(const NetworkConfig& net, const ContentModel& cm,
                                         const AnalyticOptions& opts) {
  AssociationStats s;
  s.assoc = association_probabilities(net, cm);
  s.helper_active_prob = active_probability(net, s.assoc.helper);
  s.load_mbs = load_pmf(net, s.assoc.mbs, net.mbs.density, opts.load_tail_eps, opts.load_hard_cap);
  s.load_helper =
      load_pmf(net, s.assoc.helper, net.helper.density, opts.load_tail_eps, opts.load_hard_cap);
  s.mean_load_mbs = mean_load(net, s.assoc.mbs, net.mbs.density);
  s.mean_load_helper = mean_load(net, s.assoc.helper, net.helper.density);
  s.backhaul_slots = net.backhaul_slots();
  return s;
}

}  // namespace hetcache
