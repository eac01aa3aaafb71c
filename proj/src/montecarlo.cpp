#include "hetcache/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <thread>

#include "hetcache/association.hpp"
#include "hetcache/errors.hpp"

namespace hetcache {

std::string_view to_string(CachePolicy p) {
  return p == CachePolicy::Hybrid ? "hybrid" : "mostpopular";
}

CachePolicy parse_policy(std::string_view name) {
  if (name == "hybrid") return CachePolicy::Hybrid;
  if (name == "mostpopular") return CachePolicy::MostPopular;
  throw ConfigError("unknown caching policy '" + std::string(name) + "'");
}

void SimConfig::validate() const {
  if (!(area_radius > 0.0)) throw ConfigError("area radius must be positive");
  if (!(user_radius > 0.0 && user_radius <= area_radius))
    throw ConfigError("user radius must lie in (0, area radius]");
  if (!(guard_fraction >= 0.0 && guard_fraction < 0.5))
    throw ConfigError("guard fraction must lie in [0, 0.5)");
  if (trials == 0) throw ConfigError("trials must be at least 1");
}

std::vector<std::string> SimConfig::warnings(const NetworkConfig& net) const {
  std::vector<std::string> w;
  const double expected = net.mbs.density * std::numbers::pi * area_radius * area_radius;
  if (expected < 20.0)
    w.push_back("expected MBS count " + std::to_string(expected) + " is below 20; enlarge the radius");
  return w;
}

namespace {

enum Stream : std::uint64_t { kGeometry = 1, kUsers, kFading, kFar, kBackhaul, kDiagnostics };

std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t trial, Stream s) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32),
                    static_cast<std::uint32_t>(s)};
  return std::mt19937_64(seq);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct Point {
  double x = 0.0;
  double y = 0.0;
};

double dist2(const Point& a, const Point& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

template <class Rng>
std::vector<Point> drop_ppp(Rng& rng, double density, double r_in, double r_out) {
  const double area = std::numbers::pi * (r_out * r_out - r_in * r_in);
  std::poisson_distribution<std::size_t> count(density * area);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t n = density * area > 0.0 ? count(rng) : 0;
  std::vector<Point> pts(n);
  for (Point& p : pts) {
    const double r = std::sqrt(r_in * r_in + unit(rng) * (r_out * r_out - r_in * r_in));
    const double phi = 2.0 * std::numbers::pi * unit(rng);
    p = {r * std::cos(phi), r * std::sin(phi)};
  }
  return pts;
}

// Uniform bucket grid over [-half, half]^2 with CSR storage.
class PointGrid {
 public:
  PointGrid(const std::vector<Point>& pts, double half, double cell) : pts_(pts), half_(half) {
    side_ = std::max<std::ptrdiff_t>(1, static_cast<std::ptrdiff_t>(std::ceil(2.0 * half / cell)));
    cell_ = 2.0 * half / static_cast<double>(side_);
    start_.assign(static_cast<std::size_t>(side_ * side_) + 1, 0);
    std::vector<std::size_t> key(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
      key[i] = static_cast<std::size_t>(cell_of(pts[i].y) * side_ + cell_of(pts[i].x));
      ++start_[key[i] + 1];
    }
    for (std::size_t c = 1; c < start_.size(); ++c) start_[c] += start_[c - 1];
    items_.resize(pts.size());
    std::vector<std::size_t> fill(start_.begin(), start_.end() - 1);
    for (std::size_t i = 0; i < pts.size(); ++i) items_[fill[key[i]]++] = static_cast<std::uint32_t>(i);
  }

  /// Nearest point with pred(i) true and squared distance below max_d2.
  /// Returns the index or -1.
  template <class Pred>
  std::ptrdiff_t nearest(const Point& q, double max_d2, Pred pred) const {
    const std::ptrdiff_t cx = cell_of(q.x);
    const std::ptrdiff_t cy = cell_of(q.y);
    std::ptrdiff_t best = -1;
    double best_d2 = max_d2;
    for (std::ptrdiff_t ring = 0; ring <= side_; ++ring) {
      // Every point in this ring or beyond is at least (ring - 1) cells away.
      const double reach = std::max<double>(0.0, static_cast<double>(ring - 1)) * cell_;
      if (reach * reach >= best_d2) break;
      for (std::ptrdiff_t gy = cy - ring; gy <= cy + ring; ++gy) {
        if (gy < 0 || gy >= side_) continue;
        const bool edge_row = gy == cy - ring || gy == cy + ring;
        const std::ptrdiff_t step = edge_row ? 1 : 2 * ring;
        for (std::ptrdiff_t gx = cx - ring; gx <= cx + ring; gx += std::max<std::ptrdiff_t>(step, 1)) {
          if (gx < 0 || gx >= side_) continue;
          const auto c = static_cast<std::size_t>(gy * side_ + gx);
          for (std::size_t k = start_[c]; k < start_[c + 1]; ++k) {
            const std::uint32_t i = items_[k];
            const double d2 = dist2(q, pts_[i]);
            if (d2 < best_d2 && pred(i)) {
              best_d2 = d2;
              best = i;
            }
          }
        }
      }
    }
    return best;
  }

 private:
  std::ptrdiff_t cell_of(double v) const {
    const auto c = static_cast<std::ptrdiff_t>(std::floor((v + half_) / cell_));
    return std::clamp<std::ptrdiff_t>(c, 0, side_ - 1);
  }

  const std::vector<Point>& pts_;
  double half_;
  double cell_ = 1.0;
  std::ptrdiff_t side_ = 1;
  std::vector<std::size_t> start_;
  std::vector<std::uint32_t> items_;
};

struct Association {
  ServingTier tier = ServingTier::None;
  std::ptrdiff_t index = -1;
  bool miss = false;  // second-group request on an MBS: needs the backhaul
};

class TrialWorld {
 public:
  TrialWorld(const NetworkConfig& net, const ContentModel& cm, const SimConfig& sim,
             std::uint64_t trial)
      : net_(net),
        cm_(cm),
        sim_(sim),
        cache_key_(splitmix64(sim.seed ^ splitmix64(trial + 0x51ed270b27b3cbb5ULL))),
        geometry_(make_stream(sim.seed, trial, kGeometry)),
        mbs_(drop_ppp(geometry_, net.mbs.density, 0.0, sim.area_radius)),
        helpers_(drop_ppp(geometry_, net.helper.density, 0.0, sim.user_radius)),
        mbs_grid_(mbs_, sim.area_radius, 1.0 / std::sqrt(net.mbs.density)),
        helper_grid_(helpers_, sim.user_radius, 1.0 / std::sqrt(net.helper.density)) {
    // A helper beats the nearest MBS iff it lies closer than kappa * d_MBS.
    kappa2_ = std::pow(net.helper.tx_power_w / net.mbs.tx_power_w, 2.0 / net.path_loss_exponent);
    p_lp_ = cm.helper_cache_probability();
  }

  bool empty() const { return mbs_.empty(); }
  const std::vector<Point>& mbs() const { return mbs_; }
  const std::vector<Point>& helpers() const { return helpers_; }

  bool helper_caches(std::size_t helper, std::size_t rank) const {
    if (cm_.in_first_group(rank)) return false;
    if (sim_.policy == CachePolicy::MostPopular)
      return rank <= cm_.config().mbs_cache_size + cm_.config().helper_cache_size;
    if (p_lp_ <= 0.0) return false;
    const std::uint64_t h = splitmix64(cache_key_ ^ splitmix64((helper << 32) ^ rank));
    return static_cast<double>(h >> 11) * 0x1.0p-53 < p_lp_;
  }

  Association associate(const Point& u, std::size_t rank) const {
    Association a;
    const auto m = mbs_grid_.nearest(u, std::numeric_limits<double>::infinity(), [](std::uint32_t) { return true; });
    if (m < 0) return a;
    a.tier = ServingTier::Mbs;
    a.index = m;
    if (cm_.in_first_group(rank)) return a;
    const double limit2 = kappa2_ * dist2(u, mbs_[static_cast<std::size_t>(m)]);
    const auto h = helper_grid_.nearest(u, limit2, [&](std::uint32_t i) { return helper_caches(i, rank); });
    if (h >= 0) {
      a.tier = ServingTier::Helper;
      a.index = h;
    } else {
      a.miss = true;
    }
    return a;
  }

 private:
  const NetworkConfig& net_;
  const ContentModel& cm_;
  const SimConfig& sim_;
  std::uint64_t cache_key_;
  std::mt19937_64 geometry_;
  std::vector<Point> mbs_;
  std::vector<Point> helpers_;
  PointGrid mbs_grid_;
  PointGrid helper_grid_;
  double kappa2_ = 0.0;
  double p_lp_ = 0.0;
};

double path_gain(double d2, double alpha) {
  return alpha == 4.0 ? 1.0 / (d2 * d2) : std::pow(d2, -0.5 * alpha);
}

}  // namespace

TrialOutcome run_trial(const NetworkConfig& net, const ContentModel& cm, const SimConfig& sim,
                       std::uint64_t trial_index) {
  TrialOutcome out;
  const TrialWorld world(net, cm, sim, trial_index);

  auto users_rng = make_stream(sim.seed, trial_index, kUsers);
  const std::size_t rank = cm.sample_request(users_rng);
  out.requested_content = rank;
  if (world.empty()) return out;

  const Point origin{0.0, 0.0};
  const Association tagged = world.associate(origin, rank);

  // Drop the other users and attach each to its BS.
  const auto users = drop_ppp(users_rng, net.user_density, 0.0, sim.user_radius);
  std::vector<std::uint32_t> helper_users(world.helpers().size(), 0);
  std::size_t tagged_others = 0;
  std::size_t tagged_misses = 0;
  for (const Point& u : users) {
    const std::size_t r = cm.sample_request(users_rng);
    const Association a = world.associate(u, r);
    if (a.tier == ServingTier::Helper) ++helper_users[static_cast<std::size_t>(a.index)];
    if (a.tier == tagged.tier && a.index == tagged.index) {
      ++tagged_others;
      if (a.miss) ++tagged_misses;
    }
  }
  out.serving_tier = tagged.tier;
  out.via_backhaul = tagged.miss;
  out.load = tagged_others + 1;
  out.other_misses = tagged.tier == ServingTier::Mbs ? tagged_misses : 0;

  // Helper activity: exact inside the activity radius, extrapolated outside.
  const double act_r2 = sim.activity_radius() * sim.activity_radius();
  std::vector<std::uint32_t> inner;
  for (std::size_t i = 0; i < world.helpers().size(); ++i)
    if (dist2(world.helpers()[i], origin) <= act_r2) inner.push_back(static_cast<std::uint32_t>(i));
  std::size_t inner_active = 0;
  for (std::uint32_t i : inner) inner_active += helper_users[i] > 0 ? 1 : 0;
  const double active_frac =
      inner.empty() ? 0.0 : static_cast<double>(inner_active) / static_cast<double>(inner.size());
  out.inner_active_fraction = active_frac;

  auto diag_rng = make_stream(sim.seed, trial_index, kDiagnostics);
  if (!inner.empty()) {
    std::uniform_int_distribution<std::size_t> pick(0, inner.size() - 1);
    out.sampled_helper_active = helper_users[inner[pick(diag_rng)]] > 0 ? 1 : 0;
  }

  auto far_rng = make_stream(sim.seed, trial_index, kFar);
  std::bernoulli_distribution extrapolated_active(active_frac);
  std::vector<char> active(world.helpers().size(), 0);
  for (std::size_t i = 0; i < world.helpers().size(); ++i) {
    if (dist2(world.helpers()[i], origin) <= act_r2)
      active[i] = helper_users[i] > 0;
    else
      active[i] = extrapolated_active(far_rng);
  }
  if (tagged.tier == ServingTier::Helper) active[static_cast<std::size_t>(tagged.index)] = 1;

  // SINR at the origin with unit-mean exponential fading.
  const double alpha = net.path_loss_exponent;
  auto fading_rng = make_stream(sim.seed, trial_index, kFading);
  std::exponential_distribution<double> fade(1.0);
  double signal = 0.0;
  double interference = 0.0;
  for (std::size_t i = 0; i < world.mbs().size(); ++i) {
    const double p = net.mbs.tx_power_w * fade(fading_rng) * path_gain(dist2(world.mbs()[i], origin), alpha);
    if (tagged.tier == ServingTier::Mbs && static_cast<std::ptrdiff_t>(i) == tagged.index)
      signal = p;
    else
      interference += p;
  }
  for (std::size_t i = 0; i < world.helpers().size(); ++i) {
    const double h = fade(fading_rng);
    if (!active[i]) continue;
    const double p = net.helper.tx_power_w * h * path_gain(dist2(world.helpers()[i], origin), alpha);
    if (tagged.tier == ServingTier::Helper && static_cast<std::ptrdiff_t>(i) == tagged.index)
      signal = p;
    else
      interference += p;
  }
  for (const Point& p : drop_ppp(far_rng, net.helper.density * active_frac, sim.user_radius, sim.area_radius))
    interference += net.helper.tx_power_w * fade(far_rng) * path_gain(dist2(p, origin), alpha);

  const double noise_plus_i = interference + net.noise_power_w;
  const double sinr = noise_plus_i > 0.0 ? signal / noise_plus_i : std::numeric_limits<double>::infinity();
  out.access_rate = net.bandwidth_hz / static_cast<double>(out.load) * std::log2(1.0 + sinr);
  const bool access_ok = out.access_rate >= net.rate_demand_bps;

  if (tagged.miss) {
    auto bh_rng = make_stream(sim.seed, trial_index, kBackhaul);
    std::uniform_int_distribution<std::size_t> slot(0, out.other_misses);
    out.backhaul_granted = slot(bh_rng) < net.backhaul_slots();
    out.success = access_ok && out.backhaul_granted;
    out.delivered_rate = out.success ? net.rate_demand_bps : 0.0;
  } else {
    out.success = access_ok;
    out.delivered_rate = out.success ? out.access_rate : 0.0;
  }
  return out;
}

std::vector<TrialOutcome> run_trials(const NetworkConfig& net, const ContentModel& cm,
                                     const SimConfig& sim) {
  net.validate();
  sim.validate();
  std::vector<TrialOutcome> out(sim.trials);
  unsigned workers = sim.threads != 0 ? sim.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, sim.trials));
  if (workers <= 1) {
    for (std::size_t t = 0; t < sim.trials; ++t) out[t] = run_trial(net, cm, sim, t);
    return out;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t t = w; t < sim.trials; t += workers) out[t] = run_trial(net, cm, sim, t);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

namespace {

class MeanAccumulator {
 public:
  void add(double x) {
    ++n_;
    sum_ += x;
    sum2_ += x * x;
  }
  MeanEstimate result() const {
    MeanEstimate m;
    m.count = n_;
    if (n_ == 0) return m;
    const double n = static_cast<double>(n_);
    m.mean = sum_ / n;
    if (n_ > 1) {
      const double var = std::max(0.0, (sum2_ - n * m.mean * m.mean) / (n - 1.0));
      m.std_error = std::sqrt(var / n);
    }
    return m;
  }

 private:
  std::size_t n_ = 0;
  double sum_ = 0.0;
  double sum2_ = 0.0;
};

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

SimEstimate summarize(const NetworkConfig& net, const ContentModel& cm,
                      const std::vector<TrialOutcome>& outcomes) {
  SimEstimate e;
  e.trials = outcomes.size();
  MeanAccumulator delivered, active, load, r_mp1, r_lp2, usage;
  std::size_t mp_success = 0, lp2_success = 0, lp1_access = 0, lp1_granted = 0;
  const double slots = static_cast<double>(net.backhaul_slots());
  for (const TrialOutcome& o : outcomes) {
    const bool first = cm.in_first_group(o.requested_content);
    if (o.serving_tier == ServingTier::None) ++e.degenerate;
    if (o.success) {
      ++e.successes;
      delivered.add(o.delivered_rate);
    }
    if (o.sampled_helper_active >= 0) active.add(o.sampled_helper_active);
    if (first) {
      ++e.first_group_requests;
      if (o.success) {
        ++mp_success;
        r_mp1.add(o.delivered_rate);
      }
    } else {
      ++e.second_group_requests;
      if (o.serving_tier == ServingTier::Helper && o.success) {
        ++lp2_success;
        r_lp2.add(o.delivered_rate);
      }
      if (o.serving_tier == ServingTier::Mbs) {
        ++e.second_group_on_mbs;
        if (o.access_rate >= net.rate_demand_bps) ++lp1_access;
        if (o.backhaul_granted) ++lp1_granted;
      }
    }
    if (o.serving_tier == ServingTier::Mbs) {
      ++e.on_mbs;
      load.add(static_cast<double>(o.load));
      if (e.mbs_load_histogram.size() <= o.load) e.mbs_load_histogram.resize(o.load + 1, 0);
      ++e.mbs_load_histogram[o.load];
      const double misses = static_cast<double>(o.other_misses + (o.via_backhaul ? 1 : 0));
      usage.add(slots > 0.0 ? std::min(1.0, misses / slots) : (misses > 0.0 ? 1.0 : 0.0));
    }
  }
  e.scdp = ratio(e.successes, e.trials);
  e.scdp_ci = numerics::wilson_interval(e.successes, e.trials);
  const MeanEstimate d = delivered.result();
  if (d.count > 0) {
    e.r_suc = d.mean;
    e.r_suc_std_error = d.std_error;
  }
  e.throughput = net.user_density * e.scdp * d.mean;
  e.c_mp = ratio(mp_success, e.first_group_requests);
  e.c_lp2 = ratio(lp2_success, e.second_group_requests);
  e.c_lp1_w = ratio(lp1_access, e.second_group_requests);
  e.c_lp1_b = ratio(lp1_granted, e.second_group_on_mbs);
  e.backhaul_attempts = lp1_access;
  e.helper_active = active.result();
  e.mbs_load = load.result();
  e.rate_mp1 = r_mp1.result();
  e.rate_lp2 = r_lp2.result();

  // Power model with the measured helper activity and backhaul usage.
  AssociationStats stats;
  stats.helper_active_prob = e.helper_active.mean;
  const Scenario mean_free = Scenario::InterferenceLimited;
  e.power = power_model(net, cm, stats, mean_free);
  e.power.tier[0].backhaul = net.backhaul_power_w_per_bps * net.backhaul_capacity_bps * usage.result().mean;
  e.power.area_total = net.mbs.density * e.power.tier[0].per_bs() + net.helper.density * e.power.tier[1].per_bs();
  e.ee = e.power.area_total > 0.0 ? e.throughput / e.power.area_total : 0.0;
  return e;
}

SimEstimate estimate(const NetworkConfig& net, const ContentModel& cm, const SimConfig& sim) {
  SimEstimate e = summarize(net, cm, run_trials(net, cm, sim));
  e.warnings = sim.warnings(net);
  return e;
}

}  // namespace hetcache
