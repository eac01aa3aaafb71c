#include "hetcache/config_file.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>

#include "hetcache/errors.hpp"

namespace hetcache {

void RunConfig::validate() const {
  network.validate();
  content.validate();
  sim.validate();
}

namespace {

std::size_t as_count(std::string_view key, double v) {
  if (!(v >= 0.0) || v != std::floor(v) || v > 9.0e15)
    throw ConfigError(std::string(key) + " must be a non-negative integer");
  return static_cast<std::size_t>(v);
}

using Setter = std::function<void(RunConfig&, double)>;

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = [] {
    std::map<std::string, Setter, std::less<>> t;
    t["lambda1"] = [](RunConfig& c, double v) { c.network.mbs.density = v; };
    t["lambda2"] = [](RunConfig& c, double v) { c.network.helper.density = v; };
    t["lambda_u"] = [](RunConfig& c, double v) { c.network.user_density = v; };
    t["P1_dbm"] = [](RunConfig& c, double v) { c.network.mbs.tx_power_w = dbm_to_watt(v); };
    t["P2_dbm"] = [](RunConfig& c, double v) { c.network.helper.tx_power_w = dbm_to_watt(v); };
    t["P1_w"] = [](RunConfig& c, double v) { c.network.mbs.tx_power_w = v; };
    t["P2_w"] = [](RunConfig& c, double v) { c.network.helper.tx_power_w = v; };
    t["P1_circuit_w"] = [](RunConfig& c, double v) { c.network.mbs.circuit_power_w = v; };
    t["P2_circuit_w"] = [](RunConfig& c, double v) { c.network.helper.circuit_power_w = v; };
    t["eps1"] = [](RunConfig& c, double v) { c.network.mbs.amplifier_coeff = v; };
    t["eps2"] = [](RunConfig& c, double v) { c.network.helper.amplifier_coeff = v; };
    t["alpha"] = [](RunConfig& c, double v) { c.network.path_loss_exponent = v; };
    t["W"] = [](RunConfig& c, double v) {
      c.network.bandwidth_hz = v;
      if (c.noise_from_bandwidth && v > 0.0) c.network.noise_power_w = thermal_noise_w(v);
    };
    t["noise_dbm"] = [](RunConfig& c, double v) {
      c.network.noise_power_w = dbm_to_watt(v);
      c.noise_from_bandwidth = false;
    };
    t["noise_w"] = [](RunConfig& c, double v) {
      c.network.noise_power_w = v;
      c.noise_from_bandwidth = false;
    };
    t["R0"] = [](RunConfig& c, double v) { c.network.rate_demand_bps = v; };
    t["C_b"] = [](RunConfig& c, double v) { c.network.backhaul_capacity_bps = v; };
    t["rho"] = [](RunConfig& c, double v) { c.network.cache_power_w_per_bit = v; };
    t["omega"] = [](RunConfig& c, double v) { c.network.backhaul_power_w_per_bps = v; };
    t["N"] = [](RunConfig& c, double v) { c.content.library_size = as_count("N", v); };
    t["N1"] = [](RunConfig& c, double v) { c.content.mbs_cache_size = as_count("N1", v); };
    t["N2"] = [](RunConfig& c, double v) { c.content.helper_cache_size = as_count("N2", v); };
    t["gamma"] = [](RunConfig& c, double v) { c.content.zipf_exponent = v; };
    t["delta"] = t["gamma"];
    t["F"] = [](RunConfig& c, double v) { c.content.content_size_bits = v; };
    t["radius"] = [](RunConfig& c, double v) { c.sim.area_radius = v; };
    t["user_radius"] = [](RunConfig& c, double v) { c.sim.user_radius = v; };
    t["guard_fraction"] = [](RunConfig& c, double v) { c.sim.guard_fraction = v; };
    t["trials"] = [](RunConfig& c, double v) { c.sim.trials = as_count("trials", v); };
    t["seed"] = [](RunConfig& c, double v) { c.sim.seed = as_count("seed", v); };
    t["threads"] = [](RunConfig& c, double v) { c.sim.threads = static_cast<unsigned>(as_count("threads", v)); };
    return t;
  }();
  return table;
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

void apply_setting(RunConfig& cfg, std::string_view key, double value) {
  const auto it = setters().find(key);
  if (it == setters().end()) throw ConfigError("unknown parameter '" + std::string(key) + "'");
  if (!std::isfinite(value)) throw ConfigError(std::string(key) + " must be finite");
  it->second(cfg, value);
}

RunConfig parse_config(std::istream& in, const std::string& source) {
  RunConfig cfg;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view text(line);
    if (const auto hash = text.find('#'); hash != std::string_view::npos) text = text.substr(0, hash);
    text = trim(text);
    if (text.empty()) continue;
    const auto where = source + ":" + std::to_string(lineno) + ": ";
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) throw ConfigError(where + "expected 'key = value'");
    const auto key = trim(text.substr(0, eq));
    const auto val = trim(text.substr(eq + 1));
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(val.data(), val.data() + val.size(), v);
    if (ec != std::errc() || ptr != val.data() + val.size())
      throw ConfigError(where + "'" + std::string(val) + "' is not a number");
    try {
      apply_setting(cfg, key, v);
    } catch (const ConfigError& e) {
      throw ConfigError(where + e.what());
    }
  }
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  return parse_config(in, path.string());
}

}  // namespace hetcache
