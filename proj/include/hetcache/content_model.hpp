#pragma once

#include <cstddef>
#include <random>
#include <vector>

namespace hetcache {

/// Content library and cache sizing. Contents are ranked 1..N by popularity;
/// ranks 1..N1 form the first (MBS-cached) group, the rest the second group.
struct ContentConfig {
  std::size_t library_size = 2000;       // N
  double zipf_exponent = 0.5;            // gamma (figure captions call it delta)
  std::size_t mbs_cache_size = 400;      // N1
  std::size_t helper_cache_size = 200;   // N2
  double content_size_bits = 1e7;        // F

  void validate() const;
};

/// Zipf popularity with the two-group split. Immutable once built.
class ContentModel {
 public:
  explicit ContentModel(const ContentConfig& cfg);

  const ContentConfig& config() const { return cfg_; }
  std::size_t library_size() const { return cfg_.library_size; }

  /// q_n for rank n in 1..N.
  double popularity(std::size_t rank) const { return popularity_[rank - 1]; }
  const std::vector<double>& popularity() const { return popularity_; }

  double first_group_mass() const { return first_group_mass_; }    // Q_Mp
  double second_group_mass() const { return second_group_mass_; }  // Q_Lp
  /// Per-content helper caching probability p_Lp = N2 / (N - N1).
  double helper_cache_probability() const { return helper_cache_probability_; }

  bool in_first_group(std::size_t rank) const { return rank <= cfg_.mbs_cache_size; }

  /// Draws a content rank in 1..N with probability q_n (inverse CDF).
  template <class Rng>
  std::size_t sample_request(Rng& rng) const {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    return rank_for_quantile(unit(rng));
  }

  std::size_t rank_for_quantile(double u) const;

 private:
  ContentConfig cfg_;
  std::vector<double> popularity_;
  std::vector<double> cumulative_;
  double first_group_mass_ = 0.0;
  double second_group_mass_ = 0.0;
  double helper_cache_probability_ = 0.0;
};

ContentModel build_content_model(const ContentConfig& cfg);

}  // namespace hetcache
