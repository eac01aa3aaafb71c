#pragma once

#include <filesystem>
#include <functional>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "hetcache/config_file.hpp"
#include "hetcache/montecarlo.hpp"

namespace hetcache {

enum class Engine { AnalyticGeneral, AnalyticInterferenceLimited, AnalyticMeanLoad, MonteCarlo };

std::string_view to_string(Engine e);
Engine parse_engine(std::string_view name);

/// Parameters a sweep may vary.
inline constexpr std::string_view kSweepAxes[] = {"lambda2", "N2", "N", "gamma", "C_b", "R0"};

struct SweepSpec {
  RunConfig base;
  std::string axis = "lambda2";
  std::vector<double> values;
  std::vector<Engine> engines{Engine::AnalyticInterferenceLimited};
  std::vector<CachePolicy> policies{CachePolicy::Hybrid};
  // Optional label for a family of curves, e.g. series "N2" at 200.
  std::string series;
  std::optional<double> series_value;
  bool record_timing = true;
  unsigned workers = 1;  // concurrent sweep points

  void validate() const;
};

/// One CSV row. Metrics are absent on error rows; ci_halfwidth only for Monte Carlo.
struct SweepRow {
  std::string axis;
  double value = 0.0;
  Engine engine = Engine::AnalyticInterferenceLimited;
  CachePolicy policy = CachePolicy::Hybrid;
  std::optional<double> scdp, c_mp, c_lp2, c_lp1_w, c_lp1_b;
  std::optional<double> r_suc, throughput, power, ee;
  std::optional<double> ci_halfwidth;
  std::optional<double> runtime_ms;
  std::string error;
  std::string series;
  std::optional<double> series_value;
};

using ProgressFn = std::function<void(const SweepRow&)>;

/// Rows ordered by value, then engine, then policy, as listed in the spec.
/// A failing point yields a row with `error` set; the sweep continues.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, const ProgressFn& progress = {});

/// Header: axis,value,engine,policy,scdp,C_Mp,C_Lp2,C_Lp1_w,C_Lp1_b,r_suc,
/// throughput,power,ee,ci_halfwidth,runtime_ms,error,series,series_value.
void write_csv(std::ostream& out, const std::vector<SweepRow>& rows);
std::vector<SweepRow> read_csv(std::istream& in);

/// The sweeps behind figure k in 2..9. Figures 6-9 share the sweeps of 2-5
/// and read the r_suc and ee columns. Throws ConfigError for other k.
std::vector<SweepSpec> figure_sweeps(int figure, const RunConfig& base);

/// Runs figure_sweeps(figure) and writes <out_dir>/fig<k>.csv. Returns the rows.
std::vector<SweepRow> reproduce_figure(int figure, const RunConfig& base,
                                       const std::filesystem::path& out_dir, bool record_timing = true,
                                       const ProgressFn& progress = {});

}  // namespace hetcache
