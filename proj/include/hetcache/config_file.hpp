#pragma once

#include <filesystem>
#include <istream>
#include <string>
#include <string_view>

#include "hetcache/content_model.hpp"
#include "hetcache/montecarlo.hpp"
#include "hetcache/network_config.hpp"

namespace hetcache {

/// Everything one evaluation point needs.
struct RunConfig {
  NetworkConfig network = default_network();
  ContentConfig content;
  SimConfig sim;
  bool noise_from_bandwidth = true;  // recompute thermal noise when W changes

  void validate() const;
};

/// Sets one named parameter. Keys and units:
///
///   lambda1, lambda2, lambda_u     densities in 1/m^2
///   P1_dbm, P2_dbm / P1_w, P2_w    transmit powers
///   P1_circuit_w, P2_circuit_w     static power per BS
///   eps1, eps2                     amplifier coefficients
///   alpha                          path-loss exponent
///   W                              bandwidth in Hz
///   noise_dbm / noise_w            noise power (default: thermal floor over W)
///   R0, C_b                        rate demand, backhaul capacity in bps
///   rho                            cache power in W/bit
///   omega                          backhaul power in W/bps
///   N, N1, N2                      library and cache sizes in contents
///   gamma (alias delta)            Zipf exponent
///   F                              content size in bits
///   radius, user_radius            simulation window in m
///   guard_fraction, trials, seed, threads
///
/// Throws ConfigError for unknown keys or non-integral counts.
void apply_setting(RunConfig& cfg, std::string_view key, double value);

/// Flat `key = value` text, one entry per line, `#` starts a comment.
RunConfig parse_config(std::istream& in, const std::string& source = "<config>");
RunConfig load_config(const std::filesystem::path& path);

}  // namespace hetcache
