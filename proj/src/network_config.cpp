#include "hetcache/network_config.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "hetcache/errors.hpp"

namespace hetcache {

unsigned NetworkConfig::backhaul_slots() const {
  // Guard against C_b / R0 landing a hair below an integer.
  const double slots = std::floor(backhaul_capacity_bps / rate_demand_bps + 1e-9);
  return slots >= std::numeric_limits<unsigned>::max() ? std::numeric_limits<unsigned>::max()
                                                        : static_cast<unsigned>(slots);
}

namespace {
void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}
}  // namespace

void NetworkConfig::validate() const {
  require(mbs.density > 0.0, "MBS density must be positive");
  require(helper.density > 0.0, "helper density must be positive");
  require(user_density > 0.0, "user density must be positive");
  require(mbs.tx_power_w > 0.0 && helper.tx_power_w > 0.0, "transmit powers must be positive");
  require(mbs.circuit_power_w >= 0.0 && helper.circuit_power_w >= 0.0,
          "circuit powers must be non-negative");
  require(mbs.amplifier_coeff > 0.0 && helper.amplifier_coeff > 0.0,
          "amplifier coefficients must be positive");
  require(path_loss_exponent > 2.0 && path_loss_exponent <= 4.0,
          "path-loss exponent must lie in (2, 4]");
  require(bandwidth_hz > 0.0, "bandwidth must be positive");
  require(noise_power_w >= 0.0, "noise power must be non-negative");
  require(rate_demand_bps > 0.0, "rate demand R0 must be positive");
  require(backhaul_capacity_bps > 0.0, "backhaul capacity must be positive");
  require(cache_power_w_per_bit >= 0.0, "cache power coefficient must be non-negative");
  require(backhaul_power_w_per_bps >= 0.0, "backhaul power coefficient must be non-negative");
}

double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double watt_to_dbm(double watt) { return 10.0 * std::log10(watt) + 30.0; }

double thermal_noise_w(double bandwidth_hz) {
  return dbm_to_watt(-174.0 + 10.0 * std::log10(bandwidth_hz));
}

NetworkConfig default_network() {
  NetworkConfig net;
  net.mbs = {2e-6, dbm_to_watt(46.0), 724.6, 3.22};
  net.helper = {1e-4, dbm_to_watt(21.0), 10.16, 15.13};
  net.user_density = 1e-4;
  net.path_loss_exponent = 4.0;
  net.bandwidth_hz = 10e6;
  net.noise_power_w = thermal_noise_w(net.bandwidth_hz);
  net.rate_demand_bps = 100e3;
  net.backhaul_capacity_bps = 2.5e6;
  net.cache_power_w_per_bit = 6.25e-12;
  net.backhaul_power_w_per_bps = 5e-7;
  return net;
}

}  // namespace hetcache
