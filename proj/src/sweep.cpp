#include "hetcache/sweep.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <mutex>
#include <thread>

#include "hetcache/analytics.hpp"
#include "hetcache/errors.hpp"

namespace hetcache {

std::string_view to_string(Engine e) {
  switch (e) {
    case Engine::AnalyticGeneral: return "analytic-general";
    case Engine::AnalyticInterferenceLimited: return "analytic-il";
    case Engine::AnalyticMeanLoad: return "analytic-meanload";
    case Engine::MonteCarlo: return "montecarlo";
  }
  return "?";
}

Engine parse_engine(std::string_view name) {
  for (Engine e : {Engine::AnalyticGeneral, Engine::AnalyticInterferenceLimited, Engine::AnalyticMeanLoad,
                   Engine::MonteCarlo})
    if (to_string(e) == name) return e;
  throw ConfigError("unknown engine '" + std::string(name) + "'");
}

void SweepSpec::validate() const {
  if (std::find(std::begin(kSweepAxes), std::end(kSweepAxes), axis) == std::end(kSweepAxes))
    throw ConfigError("unknown sweep axis '" + axis + "'");
  if (engines.empty()) throw ConfigError("at least one engine is required");
  if (policies.empty()) throw ConfigError("at least one policy is required");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0.0) || !std::isfinite(values[i]))
      throw ConfigError("sweep values must be positive and finite");
    if (i > 0 && !(values[i] > values[i - 1])) throw ConfigError("sweep values must be strictly increasing");
  }
}

namespace {

struct Job {
  double value;
  Engine engine;
  CachePolicy policy;
};

Scenario scenario_for(Engine e) {
  switch (e) {
    case Engine::AnalyticGeneral: return Scenario::General;
    case Engine::AnalyticMeanLoad: return Scenario::MeanLoad;
    default: return Scenario::InterferenceLimited;
  }
}

void evaluate_point(const SweepSpec& spec, const Job& job, SweepRow& row) {
  RunConfig cfg = spec.base;
  apply_setting(cfg, spec.axis, job.value);
  cfg.validate();
  const ContentModel cm(cfg.content);

  if (job.engine == Engine::MonteCarlo) {
    SimConfig sim = cfg.sim;
    sim.policy = job.policy;
    const SimEstimate e = estimate(cfg.network, cm, sim);
    row.scdp = e.scdp;
    row.c_mp = e.c_mp;
    row.c_lp2 = e.c_lp2;
    row.c_lp1_w = e.c_lp1_w;
    row.c_lp1_b = e.c_lp1_b;
    row.r_suc = e.r_suc;
    row.throughput = e.throughput;
    row.power = e.power.area_total;
    row.ee = e.ee;
    row.ci_halfwidth = e.scdp_ci.half_width();
    return;
  }
  if (job.policy != CachePolicy::Hybrid)
    throw ConfigError("analytic engines model the hybrid policy only");
  AnalyticOptions opts;
  opts.scenario = scenario_for(job.engine);
  const AnalyticReport r = evaluate(cfg.network, cm, opts);
  row.scdp = r.scdp.total;
  row.c_mp = r.scdp.c_mp;
  row.c_lp2 = r.scdp.c_lp2;
  row.c_lp1_w = r.scdp.c_lp1_w;
  row.c_lp1_b = r.scdp.c_lp1_b;
  row.r_suc = r.rate.r_total;
  row.throughput = r.energy.throughput;
  row.power = r.energy.power.area_total;
  row.ee = r.energy.ee;
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepSpec& spec, const ProgressFn& progress) {
  spec.validate();
  std::vector<Job> jobs;
  for (double v : spec.values)
    for (Engine e : spec.engines)
      for (CachePolicy p : spec.policies) jobs.push_back({v, e, p});

  std::vector<SweepRow> rows(jobs.size());
  std::atomic<std::size_t> next{0};
  std::mutex progress_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      SweepRow& row = rows[i];
      row.axis = spec.axis;
      row.value = jobs[i].value;
      row.engine = jobs[i].engine;
      row.policy = jobs[i].policy;
      row.series = spec.series;
      row.series_value = spec.series_value;
      const auto t0 = std::chrono::steady_clock::now();
      try {
        evaluate_point(spec, jobs[i], row);
      } catch (const std::exception& e) {
        row = SweepRow{};
        row.axis = spec.axis;
        row.value = jobs[i].value;
        row.engine = jobs[i].engine;
        row.policy = jobs[i].policy;
        row.series = spec.series;
        row.series_value = spec.series_value;
        row.error = e.what();
      }
      if (spec.record_timing)
        row.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      if (progress) {
        std::lock_guard lock(progress_mutex);
        progress(row);
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(spec.workers, static_cast<unsigned>(jobs.size())));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < n; ++w) pool.emplace_back(worker);
  }
  return rows;
}

namespace {

constexpr std::array<std::string_view, 18> kColumns{
    "axis", "value", "engine", "policy", "scdp", "C_Mp", "C_Lp2", "C_Lp1_w", "C_Lp1_b", "r_suc",
    "throughput", "power", "ee", "ci_halfwidth", "runtime_ms", "error", "series", "series_value"};

std::string format_number(double v) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

std::string format_optional(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

std::string quote(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

// Splits one CSV record; quoted fields may span lines.
bool read_record(std::istream& in, std::vector<std::string>& fields) {
  fields.clear();
  std::string field;
  bool quoted = false;
  bool any = false;
  char c;
  while (in.get(c)) {
    any = true;
    if (quoted) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get(c);
          field += '"';
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (c == '\n') {
      break;
    } else if (c != '\r') {
      field += c;
    }
  }
  if (!any) return false;
  fields.push_back(std::move(field));
  return true;
}

double parse_number(const std::string& s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw ConfigError("bad number '" + s + "' in CSV");
  return v;
}

std::optional<double> parse_optional(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return parse_number(s);
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  for (std::size_t i = 0; i < kColumns.size(); ++i) out << (i ? "," : "") << kColumns[i];
  out << '\n';
  for (const SweepRow& r : rows) {
    const std::array<std::string, 18> f{quote(r.axis),
                                        format_number(r.value),
                                        std::string(to_string(r.engine)),
                                        std::string(to_string(r.policy)),
                                        format_optional(r.scdp),
                                        format_optional(r.c_mp),
                                        format_optional(r.c_lp2),
                                        format_optional(r.c_lp1_w),
                                        format_optional(r.c_lp1_b),
                                        format_optional(r.r_suc),
                                        format_optional(r.throughput),
                                        format_optional(r.power),
                                        format_optional(r.ee),
                                        format_optional(r.ci_halfwidth),
                                        format_optional(r.runtime_ms),
                                        quote(r.error),
                                        quote(r.series),
                                        format_optional(r.series_value)};
    for (std::size_t i = 0; i < f.size(); ++i) out << (i ? "," : "") << f[i];
    out << '\n';
  }
}

std::vector<SweepRow> read_csv(std::istream& in) {
  std::vector<std::string> f;
  if (!read_record(in, f)) return {};
  if (f.size() != kColumns.size() || !std::equal(f.begin(), f.end(), kColumns.begin()))
    throw ConfigError("unexpected CSV header");
  std::vector<SweepRow> rows;
  while (read_record(in, f)) {
    if (f.size() == 1 && f[0].empty()) continue;
    if (f.size() != kColumns.size()) throw ConfigError("CSV row has " + std::to_string(f.size()) + " fields");
    SweepRow r;
    r.axis = f[0];
    r.value = parse_number(f[1]);
    r.engine = parse_engine(f[2]);
    r.policy = parse_policy(f[3]);
    r.scdp = parse_optional(f[4]);
    r.c_mp = parse_optional(f[5]);
    r.c_lp2 = parse_optional(f[6]);
    r.c_lp1_w = parse_optional(f[7]);
    r.c_lp1_b = parse_optional(f[8]);
    r.r_suc = parse_optional(f[9]);
    r.throughput = parse_optional(f[10]);
    r.power = parse_optional(f[11]);
    r.ee = parse_optional(f[12]);
    r.ci_halfwidth = parse_optional(f[13]);
    r.runtime_ms = parse_optional(f[14]);
    r.error = f[15];
    r.series = f[16];
    r.series_value = parse_optional(f[17]);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<SweepSpec> figure_sweeps(int figure, const RunConfig& base) {
  if (figure < 2 || figure > 9) throw ConfigError("figure must be in 2..9");
  const int sweep = figure >= 6 ? figure - 4 : figure;
  const std::vector<double> lambda2{1e-5, 2e-5, 5e-5, 1e-4, 2e-4, 5e-4, 1e-3};
  const std::vector<double> n2{25, 50, 100, 150, 200, 250, 300, 350, 400};
  const std::vector<double> cb{1e5, 2e5, 5e5, 1e6, 2e6, 5e6, 1e7};

  RunConfig cfg = base;
  cfg.content.zipf_exponent = 0.5;
  cfg.network.backhaul_capacity_bps = 2.5e6;

  std::string axis, series;
  std::vector<double> values, series_values;
  switch (sweep) {
    case 2: axis = "lambda2"; values = lambda2; series = "N2"; series_values = {100, 200, 300}; break;
    case 3:
      axis = "lambda2"; values = lambda2; series = "N"; series_values = {1000, 2000, 3000};
      cfg.content.helper_cache_size = 200;
      break;
    case 4:
      axis = "N2"; values = n2; series = "gamma"; series_values = {0.2, 0.5, 1.0};
      cfg.network.helper.density = 1e-4;
      break;
    default:
      axis = "C_b"; values = cb; series = "N2"; series_values = {100, 200, 300};
      cfg.network.helper.density = 1e-4;
      break;
  }

  std::vector<SweepSpec> specs;
  for (double s : series_values) {
    SweepSpec spec;
    spec.base = cfg;
    apply_setting(spec.base, series, s);
    spec.axis = axis;
    spec.values = values;
    spec.series = series;
    spec.series_value = s;
    spec.engines = {Engine::AnalyticGeneral, Engine::AnalyticInterferenceLimited, Engine::AnalyticMeanLoad};
    spec.policies = {CachePolicy::Hybrid};
    specs.push_back(spec);
    spec.engines = {Engine::MonteCarlo};
    spec.policies = {CachePolicy::Hybrid, CachePolicy::MostPopular};
    specs.push_back(spec);
  }
  return specs;
}

std::vector<SweepRow> reproduce_figure(int figure, const RunConfig& base, const std::filesystem::path& out_dir,
                                       bool record_timing, const ProgressFn& progress) {
  std::vector<SweepRow> rows;
  for (SweepSpec spec : figure_sweeps(figure, base)) {
    spec.record_timing = record_timing;
    auto part = run_sweep(spec, progress);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  const auto path = out_dir / ("fig" + std::to_string(figure) + ".csv");
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  write_csv(out, rows);
  return rows;
}

}  // namespace hetcache
