#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hetcache/content_model.hpp"
#include "hetcache/network_config.hpp"
#include "hetcache/numerics.hpp"
#include "hetcache/rate_energy.hpp"

namespace hetcache {

enum class CachePolicy { Hybrid, MostPopular };
enum class ServingTier { None, Mbs, Helper };

std::string_view to_string(CachePolicy p);
CachePolicy parse_policy(std::string_view name);

/// Simulation window and trial budget.
///
/// MBSs are dropped over the whole disk of `area_radius`. Users and helpers
/// are dropped explicitly inside `user_radius`; helper activity is measured
/// exactly inside activity_radius() = user_radius (1 - guard_fraction) and
/// extrapolated outward from the measured active fraction.
struct SimConfig {
  double area_radius = 15000.0;
  double user_radius = 4000.0;
  double guard_fraction = 0.25;
  std::size_t trials = 5000;
  std::uint64_t seed = 42;
  CachePolicy policy = CachePolicy::Hybrid;
  unsigned threads = 0;  // 0: hardware concurrency

  double activity_radius() const { return user_radius * (1.0 - guard_fraction); }
  void validate() const;
  /// Non-fatal issues, e.g. fewer than 20 expected MBSs in the window.
  std::vector<std::string> warnings(const NetworkConfig& net) const;
};

struct TrialOutcome {
  std::size_t requested_content = 0;
  ServingTier serving_tier = ServingTier::None;
  bool via_backhaul = false;
  double access_rate = 0.0;
  bool success = false;
  double delivered_rate = 0.0;

  // Diagnostics.
  std::size_t load = 0;          // tagged BS load, typical user included
  std::size_t other_misses = 0;  // other cache-miss users on a tagged MBS
  bool backhaul_granted = false;
  int sampled_helper_active = -1;  // activity of one random inner helper, -1 if none
  double inner_active_fraction = 0.0;
};

TrialOutcome run_trial(const NetworkConfig& net, const ContentModel& cm, const SimConfig& sim,
                       std::uint64_t trial_index);

/// All trials in index order; parallel over sim.threads workers.
std::vector<TrialOutcome> run_trials(const NetworkConfig& net, const ContentModel& cm,
                                     const SimConfig& sim);

/// Sample mean with a normal-theory standard error.
struct MeanEstimate {
  std::size_t count = 0;
  double mean = 0.0;
  double std_error = 0.0;
};

struct SimEstimate {
  std::size_t trials = 0;
  std::size_t successes = 0;
  std::size_t degenerate = 0;
  double scdp = 0.0;
  numerics::Interval scdp_ci;
  std::optional<double> r_suc;  // mean delivered rate over successes
  double r_suc_std_error = 0.0;
  double throughput = 0.0;
  PowerBreakdown power;
  double ee = 0.0;

  // Components on the analytic scale: c_mp conditional on a first-group
  // request; c_lp2 and c_lp1_w joint with the serving tier among
  // second-group requests; c_lp1_b is the backhaul grant rate among
  // second-group requests served by an MBS.
  double c_mp = 0.0;
  double c_lp2 = 0.0;
  double c_lp1_w = 0.0;
  double c_lp1_b = 0.0;
  std::size_t first_group_requests = 0;
  std::size_t second_group_requests = 0;
  std::size_t second_group_on_mbs = 0;
  std::size_t on_mbs = 0;
  std::size_t backhaul_attempts = 0;  // second group on MBS with access_rate >= R0

  MeanEstimate helper_active;    // one random inner helper per trial
  MeanEstimate mbs_load;         // tagged MBS load
  std::vector<std::size_t> mbs_load_histogram;  // index = load
  MeanEstimate rate_mp1;         // delivered rate, successful first-group requests
  MeanEstimate rate_lp2;         // delivered rate, successful helper deliveries

  std::vector<std::string> warnings;
};

SimEstimate summarize(const NetworkConfig& net, const ContentModel& cm,
                      const std::vector<TrialOutcome>& outcomes);
SimEstimate estimate(const NetworkConfig& net, const ContentModel& cm, const SimConfig& sim);

}  // namespace hetcache
