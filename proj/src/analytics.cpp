#include "hetcache/analytics.hpp"

namespace hetcache {

AnalyticReport evaluate(const NetworkConfig& net, const ContentModel& cm,
                        const AnalyticOptions& opts) {
  net.validate();
  AnalyticReport r;
  r.options = opts;
  r.stats = build_association_stats(net, cm, opts);
  r.scdp = scdp(net, cm, r.stats, opts);
  r.rate = avg_rate_total(net, cm, r.stats, r.scdp, opts);
  const PowerBreakdown power = power_model(net, cm, r.stats, opts.scenario);
  r.energy = energy_efficiency(net, r.scdp.total, r.rate.r_total, power);
  return r;
}

}  // namespace hetcache
