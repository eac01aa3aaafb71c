#pragma once

namespace hetcache {

enum class Tier { Mbs = 0, Helper = 1 };

/// Per-tier deployment and power parameters. Powers are in watts.
struct TierParams {
  double density = 0.0;          // BSs per m^2
  double tx_power_w = 0.0;       // P_k^t
  double circuit_power_w = 0.0;  // P_k^0
  double amplifier_coeff = 1.0;  // epsilon_k
};

struct NetworkConfig {
  TierParams mbs;
  TierParams helper;
  double user_density = 0.0;           // users per m^2
  double path_loss_exponent = 4.0;     // alpha in (2, 4]
  double bandwidth_hz = 0.0;           // W
  double noise_power_w = 0.0;          // sigma^2
  double rate_demand_bps = 0.0;        // R0
  double backhaul_capacity_bps = 0.0;  // C_b
  double cache_power_w_per_bit = 0.0;  // rho
  double backhaul_power_w_per_bps = 0.0;  // omega

  const TierParams& tier(Tier t) const { return t == Tier::Mbs ? mbs : helper; }

  /// Number of cache-miss users the backhaul serves at rate R0: floor(C_b / R0).
  unsigned backhaul_slots() const;

  void validate() const;
};

double dbm_to_watt(double dbm);
double watt_to_dbm(double watt);

/// Thermal noise floor (-174 dBm/Hz) integrated over the bandwidth, in watts.
double thermal_noise_w(double bandwidth_hz);

/// Simulation parameter table used throughout the evaluation: 46/21 dBm
/// transmit powers, lambda_u = 1e-4, lambda_1 = 2e-6, W = 10 MHz, alpha = 4,
/// R0 = 100 kbps. Helper density defaults to 1e-4, backhaul to 2.5 Mbps and
/// noise to the thermal floor.
NetworkConfig default_network();

}  // namespace hetcache
