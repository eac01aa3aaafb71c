#include "hetcache/content_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hetcache/errors.hpp"

namespace hetcache {

void ContentConfig::validate() const {
  if (library_size == 0) throw ConfigError("library_size N must be positive");
  if (!(zipf_exponent >= 0.0) || !std::isfinite(zipf_exponent))
    throw ConfigError("zipf exponent must be a finite non-negative number");
  if (mbs_cache_size > library_size)
    throw ConfigError("mbs cache N1 = " + std::to_string(mbs_cache_size) +
                      " exceeds library size " + std::to_string(library_size));
  const std::size_t second_group = library_size - mbs_cache_size;
  if (second_group == 0 && helper_cache_size > 0)
    throw ConfigError("helper cache is non-empty but the second content group is empty");
  if (helper_cache_size > second_group)
    throw ConfigError("helper cache N2 = " + std::to_string(helper_cache_size) +
                      " exceeds second-group size " + std::to_string(second_group));
  if (!(content_size_bits > 0.0)) throw ConfigError("content size must be positive");
}

ContentModel::ContentModel(const ContentConfig& cfg) : cfg_(cfg) {
  cfg_.validate();
  const std::size_t n = cfg_.library_size;

  popularity_.resize(n);
  for (std::size_t k = 0; k < n; ++k)
    popularity_[k] = std::pow(static_cast<double>(k + 1), -cfg_.zipf_exponent);

  // Weights are non-increasing in rank, so summing from the tail adds the
  // smallest magnitudes first.
  double norm = 0.0;
  for (std::size_t k = n; k-- > 0;) norm += popularity_[k];
  for (double& q : popularity_) q /= norm;

  cumulative_.resize(n);
  double acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    acc += popularity_[k];
    cumulative_[k] = acc;
  }
  cumulative_.back() = 1.0;

  double tail = 0.0;
  for (std::size_t k = n; k-- > cfg_.mbs_cache_size;) tail += popularity_[k];
  second_group_mass_ = std::min(tail, 1.0);
  first_group_mass_ = 1.0 - second_group_mass_;

  const std::size_t second_group = n - cfg_.mbs_cache_size;
  helper_cache_probability_ =
      second_group == 0 ? 0.0
                        : static_cast<double>(cfg_.helper_cache_size) / static_cast<double>(second_group);
}

std::size_t ContentModel::rank_for_quantile(double u) const {
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  if (it == cumulative_.end()) --it;
  return static_cast<std::size_t>(it - cumulative_.begin()) + 1;
}

ContentModel build_content_model(const ContentConfig& cfg) { return ContentModel(cfg); }

}  // namespace hetcache
