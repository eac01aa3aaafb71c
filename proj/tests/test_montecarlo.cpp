#include <gtest/gtest.h>

#include <boost/math/distributions/chi_squared.hpp>
#include <algorithm>
#include <cmath>

#include "hetcache/association.hpp"
#include "hetcache/errors.hpp"
#include "hetcache/montecarlo.hpp"

using namespace hetcache;

namespace {

SimConfig small_window(std::size_t trials) {
  SimConfig s;
  s.area_radius = 6000.0;
  s.user_radius = 2500.0;
  s.trials = trials;
  s.threads = 1;
  return s;
}

bool same(const TrialOutcome& a, const TrialOutcome& b) {
  return a.requested_content == b.requested_content && a.serving_tier == b.serving_tier &&
         a.via_backhaul == b.via_backhaul && a.access_rate == b.access_rate && a.success == b.success &&
         a.delivered_rate == b.delivered_rate && a.load == b.load && a.other_misses == b.other_misses &&
         a.backhaul_granted == b.backhaul_granted && a.sampled_helper_active == b.sampled_helper_active &&
         a.inner_active_fraction == b.inner_active_fraction;
}

}  // namespace

TEST(MonteCarlo, PolicyNames) {
  EXPECT_EQ(parse_policy("hybrid"), CachePolicy::Hybrid);
  EXPECT_EQ(parse_policy(to_string(CachePolicy::MostPopular)), CachePolicy::MostPopular);
  EXPECT_THROW(parse_policy("random"), ConfigError);
}

TEST(MonteCarlo, RejectsBadWindows) {
  SimConfig s;
  s.user_radius = 2.0 * s.area_radius;
  EXPECT_THROW(s.validate(), ConfigError);
  s = SimConfig{};
  s.trials = 0;
  EXPECT_THROW(s.validate(), ConfigError);
  s = SimConfig{};
  s.guard_fraction = 0.5;
  EXPECT_THROW(s.validate(), ConfigError);
}

TEST(MonteCarlo, WarnsOnSparseWindow) {
  const auto net = default_network();
  SimConfig s;
  EXPECT_TRUE(s.warnings(net).empty());
  s.area_radius = 1000.0;
  s.user_radius = 1000.0;
  EXPECT_EQ(s.warnings(net).size(), 1u);
}

TEST(MonteCarlo, SingleTrialIsZeroOrOne) {
  const auto net = default_network();
  const ContentModel cm{ContentConfig{}};
  const auto e = estimate(net, cm, small_window(1));
  EXPECT_TRUE(e.scdp == 0.0 || e.scdp == 1.0);
  EXPECT_EQ(e.trials, 1u);
}

TEST(MonteCarlo, DeterministicAcrossThreadCounts) {
  const auto net = default_network();
  const ContentModel cm{ContentConfig{}};
  auto sim = small_window(24);
  const auto a = run_trials(net, cm, sim);
  sim.threads = 3;
  const auto b = run_trials(net, cm, sim);
  const auto c = run_trials(net, cm, sim);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_TRUE(same(a[i], b[i])) << "trial " << i;
    EXPECT_TRUE(same(b[i], c[i])) << "trial " << i;
    EXPECT_TRUE(same(a[i], run_trial(net, cm, sim, i))) << "trial " << i;
  }
  sim.seed = 43;
  const auto d = run_trials(net, cm, sim);
  std::size_t differ = 0;
  for (std::size_t i = 0; i < a.size(); ++i) differ += same(a[i], d[i]) ? 0 : 1;
  EXPECT_GT(differ, 0u);
}

TEST(MonteCarlo, NoHelperCachingSendsSecondGroupOverBackhaul) {
  const auto net = default_network();
  ContentConfig cc;
  cc.helper_cache_size = 0;
  const ContentModel cm(cc);
  std::size_t second = 0;
  for (const auto& o : run_trials(net, cm, small_window(60))) {
    if (cm.in_first_group(o.requested_content)) continue;
    ++second;
    EXPECT_EQ(o.serving_tier, ServingTier::Mbs);
    EXPECT_TRUE(o.via_backhaul);
  }
  EXPECT_GT(second, 0u);
}

TEST(MonteCarlo, FirstGroupNeverUsesHelpersOrBackhaul) {
  const auto net = default_network();
  const ContentModel cm{ContentConfig{}};
  for (const auto& o : run_trials(net, cm, small_window(60))) {
    if (!cm.in_first_group(o.requested_content)) continue;
    EXPECT_EQ(o.serving_tier, ServingTier::Mbs);
    EXPECT_FALSE(o.via_backhaul);
  }
}

TEST(MonteCarlo, InterferenceFreeLimit) {
  auto net = default_network();
  net.noise_power_w = 0.0;
  net.mbs.density = 1.0 / (3.14159 * 1000.0 * 1000.0);
  net.helper.density = 1e-14;
  net.user_density = 1e-14;
  const ContentModel cm{ContentConfig{}};
  SimConfig sim;
  sim.area_radius = 1000.0;
  sim.user_radius = 1000.0;
  sim.trials = 200;
  sim.threads = 1;
  std::size_t lone = 0;
  for (const auto& o : run_trials(net, cm, sim)) {
    if (o.serving_tier == ServingTier::None) {
      EXPECT_FALSE(o.success);
      continue;
    }
    EXPECT_EQ(o.load, 1u);
    EXPECT_EQ(o.serving_tier, ServingTier::Mbs);
    if (std::isinf(o.access_rate)) {
      ++lone;
      EXPECT_TRUE(o.success);
      EXPECT_EQ(o.delivered_rate, o.via_backhaul ? net.rate_demand_bps : o.access_rate);
    }
  }
  EXPECT_GT(lone, 20u);
}

TEST(MonteCarlo, EmptyWindowIsCountedAsDegenerate) {
  auto net = default_network();
  net.mbs.density = 1e-12;
  const ContentModel cm{ContentConfig{}};
  SimConfig sim;
  sim.area_radius = 1000.0;
  sim.user_radius = 1000.0;
  sim.trials = 20;
  sim.threads = 1;
  const auto e = estimate(net, cm, sim);
  EXPECT_EQ(e.degenerate, 20u);
  EXPECT_EQ(e.scdp, 0.0);
  EXPECT_FALSE(e.r_suc.has_value());
  EXPECT_FALSE(e.warnings.empty());
}

TEST(MonteCarlo, SuccessShrinksWithDemandOnSameSeeds) {
  auto net = default_network();
  const ContentModel cm{ContentConfig{}};
  const auto sim = small_window(80);
  std::vector<TrialOutcome> prev;
  for (double r0 : {2e4, 1e5, 5e5, 2e6}) {
    net.rate_demand_bps = r0;
    const auto cur = run_trials(net, cm, sim);
    if (!prev.empty())
      for (std::size_t i = 0; i < cur.size(); ++i) EXPECT_LE(cur[i].success, prev[i].success) << "trial " << i;
    prev = cur;
  }
}

TEST(MonteCarlo, SummaryIdentities) {
  const auto net = default_network();
  const ContentModel cm{ContentConfig{}};
  const auto e = estimate(net, cm, small_window(150));
  EXPECT_LE(e.scdp_ci.lo, e.scdp);
  EXPECT_GE(e.scdp_ci.hi, e.scdp);
  EXPECT_GE(e.scdp_ci.lo, 0.0);
  EXPECT_LE(e.scdp_ci.hi, 1.0);
  EXPECT_EQ(e.first_group_requests + e.second_group_requests, e.trials);
  if (e.r_suc) EXPECT_NEAR(e.throughput, net.user_density * e.scdp * *e.r_suc, 1e-9 * e.throughput);
  EXPECT_NEAR(e.ee * e.power.area_total, e.throughput, 1e-9 * e.throughput);
  // Total success splits over the three delivery paths.
  const double parts = (e.c_mp * e.first_group_requests + e.c_lp2 * e.second_group_requests) / e.trials;
  EXPECT_LE(parts, e.scdp + 1e-12);
  std::size_t hist = 0;
  for (auto n : e.mbs_load_histogram) hist += n;
  EXPECT_EQ(hist, e.on_mbs);
}

TEST(MonteCarlo, MostPopularCachesTheSameRanksEverywhere) {
  const auto net = default_network();
  const ContentModel cm{ContentConfig{}};
  auto sim = small_window(120);
  sim.policy = CachePolicy::MostPopular;
  const std::size_t top = cm.config().mbs_cache_size + cm.config().helper_cache_size;
  for (const auto& o : run_trials(net, cm, sim))
    if (o.requested_content > top) EXPECT_NE(o.serving_tier, ServingTier::Helper);
}

// Desk-scale statistical agreement with the association and load laws.
class DeskScale : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    net_ = new NetworkConfig(default_network());
    cm_ = new ContentModel(ContentConfig{});
    SimConfig sim;
    sim.trials = 2000;
    sim.seed = 7;
    outcomes_ = new std::vector<TrialOutcome>(run_trials(*net_, *cm_, sim));
    est_ = new SimEstimate(summarize(*net_, *cm_, *outcomes_));
    stats_ = new AssociationStats(build_association_stats(*net_, *cm_));
  }
  static void TearDownTestSuite() {
    delete net_;
    delete cm_;
    delete outcomes_;
    delete est_;
    delete stats_;
  }
  static inline NetworkConfig* net_ = nullptr;
  static inline ContentModel* cm_ = nullptr;
  static inline std::vector<TrialOutcome>* outcomes_ = nullptr;
  static inline SimEstimate* est_ = nullptr;
  static inline AssociationStats* stats_ = nullptr;
};

TEST_F(DeskScale, MbsAssociationWithinThreeSigma) {
  const double p = stats_->assoc.mbs;
  const double n = static_cast<double>(est_->trials);
  const double phat = static_cast<double>(est_->on_mbs) / n;
  EXPECT_LE(std::abs(phat - p), 3.0 * std::sqrt(p * (1.0 - p) / n));
}

TEST_F(DeskScale, SecondGroupMbsAssociationWithinThreeSigma) {
  const double p = stats_->assoc.lp_mbs;
  const double n = static_cast<double>(est_->second_group_requests);
  const double phat = static_cast<double>(est_->second_group_on_mbs) / n;
  EXPECT_LE(std::abs(phat - p), 3.0 * std::sqrt(p * (1.0 - p) / n));
}

TEST_F(DeskScale, HelperActivityWithinThreeSigma) {
  const double p = stats_->helper_active_prob;
  const double n = static_cast<double>(est_->helper_active.count);
  EXPECT_LE(std::abs(est_->helper_active.mean - p), 3.0 * std::sqrt(p * (1.0 - p) / n));
}

TEST_F(DeskScale, MbsLoadHistogramFitsPmf) {
  // Cells pooled left to right until each expects at least 5 counts.
  const auto& pmf = stats_->load_mbs.prob;
  const auto& hist = est_->mbs_load_histogram;
  const double n = static_cast<double>(est_->on_mbs);
  std::vector<double> expected, observed;
  double e = 0.0, o = 0.0, tail = 1.0;
  const std::size_t top = std::max(pmf.size(), hist.size() > 0 ? hist.size() - 1 : 0);
  for (std::size_t l = 1; l <= top; ++l) {
    const double p = l - 1 < pmf.size() ? pmf[l - 1] : 0.0;
    e += n * p;
    tail -= p;
    o += l < hist.size() ? static_cast<double>(hist[l]) : 0.0;
    if (e >= 5.0 && n * tail >= 5.0) {
      expected.push_back(e);
      observed.push_back(o);
      e = o = 0.0;
    }
  }
  expected.push_back(e + n * std::max(tail, 0.0));
  observed.push_back(o);
  double chi2 = 0.0;
  for (std::size_t i = 0; i < expected.size(); ++i)
    chi2 += (observed[i] - expected[i]) * (observed[i] - expected[i]) / expected[i];
  const boost::math::chi_squared dist(static_cast<double>(expected.size() - 1));
  const double critical = boost::math::quantile(boost::math::complement(dist, 0.01));
  EXPECT_LT(chi2, critical) << expected.size() << " cells";
}
