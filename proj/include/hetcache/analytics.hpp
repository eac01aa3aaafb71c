#pragma once

#include "hetcache/analytic_options.hpp"
#include "hetcache/association.hpp"
#include "hetcache/content_model.hpp"
#include "hetcache/network_config.hpp"
#include "hetcache/rate_energy.hpp"
#include "hetcache/scdp.hpp"

namespace hetcache {

/// Everything the closed-form model produces at one parameter point.
struct AnalyticReport {
  AnalyticOptions options;
  AssociationStats stats;
  ScdpBreakdown scdp;
  RateBreakdown rate;
  EnergyReport energy;
};

AnalyticReport evaluate(const NetworkConfig& net, const ContentModel& cm,
                        const AnalyticOptions& opts = {});

}  // namespace hetcache
