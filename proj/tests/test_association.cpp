#include <gtest/gtest.h>

#include <boost/math/distributions/negative_binomial.hpp>
#include <cmath>
#include <random>

#include "hetcache/association.hpp"
#include "hetcache/errors.hpp"

using namespace hetcache;

namespace {

// Uniform popularity over 2000 contents with half of them at the MBS gives
// Q_Mp = 0.5 exactly, and N2 = 500 gives p_Lp = 0.5.
ContentModel half_split() {
  ContentConfig c;
  c.library_size = 2000;
  c.zipf_exponent = 0.0;
  c.mbs_cache_size = 1000;
  c.helper_cache_size = 500;
  return ContentModel(c);
}

}  // namespace

TEST(Association, HalfSplitExamples) {
  const auto net = default_network();
  const auto cm = half_split();
  const auto t = association_probabilities(net, cm);
  EXPECT_NEAR(t.lp_mbs, 0.41565, 5e-6);
  EXPECT_NEAR(t.lp_helper, 0.58435, 5e-6);
  EXPECT_NEAR(t.mbs, 0.70783, 5e-6);
  // Reference values for A2 and p_b were formed from the rounded A_Lp1.
  EXPECT_NEAR(t.helper, 0.29218, 1.5e-5);
  EXPECT_NEAR(t.backhaul_ratio, 0.29360, 1.5e-5);
  EXPECT_NEAR(t.lp_mbs + t.lp_helper, 1.0, 1e-15);
  EXPECT_NEAR(t.mbs + t.helper, 1.0, 1e-15);
}

TEST(Association, MeanLoadsAndActivity) {
  const auto net = default_network();
  EXPECT_NEAR(mean_load(net, 0.70783, net.mbs.density), 46.30, 5e-3);
  EXPECT_NEAR(mean_load(net, 0.29218, net.helper.density), 1.374, 5e-4);
  EXPECT_NEAR(active_probability(net, 0.29218), 0.2447, 5e-5);
  EXPECT_EQ(active_probability(net, 0.0), 0.0);
}

TEST(Association, NoHelperCachingSendsEverythingToMbs) {
  const auto net = default_network();
  ContentConfig c;
  c.helper_cache_size = 0;
  const auto t = association_probabilities(net, ContentModel(c));
  EXPECT_EQ(t.lp_mbs, 1.0);
  EXPECT_EQ(t.helper, 0.0);
  EXPECT_NEAR(t.backhaul_ratio, ContentModel(c).second_group_mass(), 1e-15);
}

TEST(LoadPmf, MatchesNegativeBinomialReference) {
  // The load law is a negative binomial with r = 4.5 and success
  // probability 3.5 / (3.5 + c) on the number of other users.
  const auto net = default_network();
  for (double assoc : {0.05, 0.3, 0.7}) {
    for (double density : {net.mbs.density, net.helper.density}) {
      const double c = assoc * net.user_density / density;
      const boost::math::negative_binomial_distribution<double> nb(4.5, 3.5 / (3.5 + c));
      const auto pmf = load_pmf(net, assoc, density);
      ASSERT_GT(pmf.prob.size(), 0u);
      for (std::size_t l = 0; l < pmf.prob.size(); l += 1 + pmf.prob.size() / 50)
        EXPECT_NEAR(pmf.prob[l], boost::math::pdf(nb, static_cast<double>(l)), 1e-12) << c << " " << l;
      EXPECT_GE(pmf.mass(), 1.0 - 1e-9);
      EXPECT_LE(pmf.mass(), 1.0 + 1e-12);
      EXPECT_NEAR(pmf.mean(), 1.0 + 4.5 / 3.5 * c, 1e-6 * (1.0 + c));
    }
  }
}

TEST(LoadPmf, EdgeCases) {
  const auto net = default_network();
  const auto empty = load_pmf(net, 0.0, net.mbs.density);
  ASSERT_EQ(empty.prob.size(), 1u);
  EXPECT_EQ(empty.prob[0], 1.0);
  EXPECT_EQ(empty.max_load(), 1u);
  EXPECT_THROW(load_pmf(net, 0.5, net.mbs.density, 1e-3), ConfigError);
  EXPECT_THROW(load_pmf(net, 0.5, net.mbs.density, 0.0), ConfigError);
  EXPECT_THROW(load_pmf(net, 0.9, net.mbs.density, 1e-9, 5), NumericalError);
}

TEST(LoadPmf, TighterTailKeepsMoreTerms) {
  const auto net = default_network();
  const auto loose = load_pmf(net, 0.8, net.mbs.density, 1e-6);
  const auto tight = load_pmf(net, 0.8, net.mbs.density, 1e-9);
  EXPECT_GT(tight.prob.size(), loose.prob.size());
  EXPECT_GE(loose.mass(), 1.0 - 1e-6);
}

TEST(Association, ProbabilitiesStayInUnitIntervalOverRandomConfigs) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    auto net = default_network();
    net.mbs.density = std::pow(10.0, -6.5 + 1.5 * unit(rng));
    net.helper.density = std::pow(10.0, -6.0 + 3.5 * unit(rng));
    net.user_density = std::pow(10.0, -5.0 + 1.5 * unit(rng));
    net.path_loss_exponent = 2.1 + 1.9 * unit(rng);
    ContentConfig c;
    c.library_size = 100 + static_cast<std::size_t>(3000 * unit(rng));
    c.mbs_cache_size = static_cast<std::size_t>(c.library_size * unit(rng));
    c.helper_cache_size = static_cast<std::size_t>((c.library_size - c.mbs_cache_size) * unit(rng));
    c.zipf_exponent = 1.5 * unit(rng);
    const ContentModel cm(c);
    const auto s = build_association_stats(net, cm);
    for (double p : {s.assoc.lp_mbs, s.assoc.lp_helper, s.assoc.mbs, s.assoc.helper, s.assoc.backhaul_ratio,
                     s.helper_active_prob}) {
      EXPECT_GE(p, 0.0);
      EXPECT_LE(p, 1.0);
    }
    EXPECT_NEAR(s.assoc.mbs + s.assoc.helper, 1.0, 1e-12);
    EXPECT_GE(s.load_mbs.mass(), 1.0 - 1e-9);
    EXPECT_GE(s.load_helper.mass(), 1.0 - 1e-9);
  }
}
