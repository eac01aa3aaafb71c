#pragma once

#include <array>

#include "hetcache/analytic_options.hpp"
#include "hetcache/association.hpp"
#include "hetcache/content_model.hpp"
#include "hetcache/network_config.hpp"
#include "hetcache/scdp.hpp"

namespace hetcache {

struct RateBreakdown {
  double r_mp1 = 0.0;    // R_Mp1_suc, conditional on a first-group request
  double r_lp2 = 0.0;    // R_Lp2_suc, joint with helper association (>= A_Lp2 R0)
  double r_total = 0.0;  // Q_Mp R_Mp1 + Q_Lp R_Lp2 + Q_Lp C_Lp1_w C_Lp1_b R0
};

/// Average rate above R0 for one access link: the outer r-integral of the
/// success ratio, in the form selected by `averaging`.
///  ConditionalMean: int_R0^inf S(r) / S(R0) dr, scaled by assoc_prob.
///  PerRealization:  int_R0^inf sum_l p_l int pdf(z) P(r | z, l) / P(R0 | z, l) dz dr.
double excess_rate(const NetworkConfig& net, const AccessLink& link,
                   const std::vector<LoadPoint>& points, bool with_noise, RateAveraging averaging);

double avg_rate_mp1(const NetworkConfig& net, const AssociationStats& stats,
                    const AnalyticOptions& opts);
double avg_rate_lp2(const NetworkConfig& net, const ContentModel& cm, const AssociationStats& stats,
                    const AnalyticOptions& opts);
RateBreakdown avg_rate_total(const NetworkConfig& net, const ContentModel& cm,
                             const AssociationStats& stats, const ScdpBreakdown& scdp,
                             const AnalyticOptions& opts);

struct TierPower {
  double bs = 0.0;        // epsilon p_a P^t + P^0
  double cache = 0.0;     // rho N_k F
  double backhaul = 0.0;  // omega C_b E[min(1, m / N_b)]
  double per_bs() const { return bs + cache + backhaul; }
};

struct PowerBreakdown {
  std::array<TierPower, 2> tier{};  // per-BS powers, index 0 = MBS
  double area_total = 0.0;          // sum_k lambda_k Pow_k, W/m^2
};

/// E[min(1, m / N_b)] with L from the MBS load pmf and m ~ Binom(L, p_b).
double backhaul_usage(const LoadPmf& mbs_load, double backhaul_ratio, unsigned backhaul_slots);
/// Same with L fixed at the mean load rounded to the nearest integer >= 1.
double backhaul_usage_mean_load(double mean_load_mbs, double backhaul_ratio,
                                unsigned backhaul_slots);

PowerBreakdown power_model(const NetworkConfig& net, const ContentModel& cm,
                           const AssociationStats& stats, Scenario scenario);

struct EnergyReport {
  double throughput = 0.0;  // bps/m^2
  PowerBreakdown power;
  double ee = 0.0;          // bit/J
};

/// T = lambda_u C R_suc, ee = T / area power.
EnergyReport energy_efficiency(const NetworkConfig& net, double scdp_total, double rate_total,
                               const PowerBreakdown& power);

}  // namespace hetcache
