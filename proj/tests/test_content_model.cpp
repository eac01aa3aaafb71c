#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "hetcache/content_model.hpp"
#include "hetcache/errors.hpp"

using namespace hetcache;

namespace {

ContentConfig table_defaults() {
  ContentConfig c;
  c.library_size = 2000;
  c.zipf_exponent = 0.5;
  c.mbs_cache_size = 400;
  c.helper_cache_size = 200;
  return c;
}

}  // namespace

TEST(ContentModel, PopularityIsNormalizedAndDecreasing) {
  const ContentModel cm(table_defaults());
  const auto& q = cm.popularity();
  EXPECT_NEAR(std::accumulate(q.begin(), q.end(), 0.0), 1.0, 1e-12);
  for (std::size_t n = 1; n < q.size(); ++n) EXPECT_LE(q[n], q[n - 1]);
  EXPECT_NEAR(cm.popularity(1) / cm.popularity(4), 2.0, 1e-12);
}

TEST(ContentModel, GroupMassesSplitTheLibrary) {
  const ContentModel cm(table_defaults());
  double head = 0.0;
  for (std::size_t n = 1; n <= 400; ++n) head += cm.popularity(n);
  EXPECT_NEAR(cm.first_group_mass(), head, 1e-12);
  EXPECT_NEAR(cm.first_group_mass() + cm.second_group_mass(), 1.0, 1e-15);
  EXPECT_DOUBLE_EQ(cm.helper_cache_probability(), 200.0 / 1600.0);
}

TEST(ContentModel, UniformPopularityWhenExponentIsZero) {
  auto c = table_defaults();
  c.zipf_exponent = 0.0;
  const ContentModel cm(c);
  EXPECT_NEAR(cm.first_group_mass(), 0.2, 1e-12);
  EXPECT_NEAR(cm.popularity(17), 1.0 / 2000.0, 1e-15);
}

TEST(ContentModel, WholeLibraryAtMbs) {
  auto c = table_defaults();
  c.mbs_cache_size = 2000;
  c.helper_cache_size = 0;
  const ContentModel cm(c);
  EXPECT_DOUBLE_EQ(cm.first_group_mass(), 1.0);
  EXPECT_DOUBLE_EQ(cm.second_group_mass(), 0.0);
  EXPECT_DOUBLE_EQ(cm.helper_cache_probability(), 0.0);
}

TEST(ContentModel, RejectsInconsistentSizes) {
  auto c = table_defaults();
  c.library_size = 0;
  EXPECT_THROW(ContentModel{c}, ConfigError);
  c = table_defaults();
  c.mbs_cache_size = 2001;
  EXPECT_THROW(ContentModel{c}, ConfigError);
  c = table_defaults();
  c.helper_cache_size = 1601;
  EXPECT_THROW(ContentModel{c}, ConfigError);
  c = table_defaults();
  c.mbs_cache_size = 2000;
  c.helper_cache_size = 1;
  EXPECT_THROW(ContentModel{c}, ConfigError);
  c = table_defaults();
  c.zipf_exponent = -0.1;
  EXPECT_THROW(ContentModel{c}, ConfigError);
}

TEST(ContentModel, QuantileEndpoints) {
  const ContentModel cm(table_defaults());
  EXPECT_EQ(cm.rank_for_quantile(0.0), 1u);
  EXPECT_EQ(cm.rank_for_quantile(std::nextafter(1.0, 0.0)), 2000u);
  EXPECT_EQ(cm.rank_for_quantile(1.0), 2000u);
  EXPECT_EQ(cm.rank_for_quantile(cm.popularity(1) * 0.5), 1u);
  EXPECT_EQ(cm.rank_for_quantile(cm.popularity(1) * 1.0001), 2u);
}

TEST(ContentModel, SampledRequestsFollowGroupMass) {
  const ContentModel cm(table_defaults());
  std::mt19937_64 rng(7);
  const int n = 200000;
  int first = 0;
  for (int i = 0; i < n; ++i) first += cm.in_first_group(cm.sample_request(rng)) ? 1 : 0;
  const double p = cm.first_group_mass();
  const double sigma = std::sqrt(p * (1 - p) / n);
  EXPECT_NEAR(static_cast<double>(first) / n, p, 4.0 * sigma);
}
