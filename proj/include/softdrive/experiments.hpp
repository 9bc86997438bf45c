#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "softdrive/config.hpp"
#include "softdrive/metrics.hpp"
#include "softdrive/simulation.hpp"
#include "softdrive/tip_map.hpp"
#include "softdrive/trace_io.hpp"

namespace softdrive {

/// |v_final - v_initial - net inflow| over the total volume moved (plus the
/// initial fill, so a run with no flow is not divided by zero).
inline double volume_residual(const SimResult& r)
{
  const double lhs = r.final_state.v_tube - r.initial_volume;
  const double scale = r.throughput + r.initial_volume;
  if (scale == 0.0) return std::abs(lhs - r.net_inflow);
  return std::abs(lhs - r.net_inflow) / scale;
}

namespace detail {

/// Files written under temporary names and renamed on commit(). Anything not
/// committed is removed on destruction.
class StagedFiles
{
public:
  ~StagedFiles()
  {
    std::error_code ec;
    for (const auto& p : staged_) std::filesystem::remove(temp_of(p), ec);
    if (!committed_) {
      for (const auto& p : done_) std::filesystem::remove(p, ec);
    }
  }

  void write(const std::filesystem::path& path, const std::string& content)
  {
    std::ofstream out(temp_of(path), std::ios::binary);
    staged_.push_back(path);
    out << content;
    out.close();
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  }

  void commit()
  {
    for (const auto& p : staged_) {
      std::filesystem::rename(temp_of(p), p);
      done_.push_back(p);
    }
    staged_.clear();
    committed_ = true;
  }

private:
  static std::filesystem::path temp_of(const std::filesystem::path& p) { return p.string() + ".partial"; }

  std::vector<std::filesystem::path> staged_;
  std::vector<std::filesystem::path> done_;
  bool committed_{false};
};

}  // namespace detail

struct ScenarioRun
{
  SimResult result;
  RunMetrics metrics;
  std::filesystem::path trace_path;
  std::filesystem::path metrics_path;
};

inline std::string trace_csv_text(const SimTrace& trace)
{
  std::ostringstream os;
  write_trace_csv(os, trace);
  return os.str();
}

inline nlohmann::json metrics_record(const ScenarioConfig& cfg, const SimResult& result, const RunMetrics& m)
{
  auto j = to_json(m);
  j["scenario"] = cfg.run.name;
  j["seed"] = cfg.run.seed;
  j["dt"] = cfg.run.dt;
  j["duration"] = cfg.run.duration;
  j["steps"] = result.trace.size();
  j["volume_residual"] = volume_residual(result);
  j["clamp_events"] = result.clamp_events;
  return j;
}

/// Run one scenario and write `<name>.csv` and `<name>.metrics.json` into
/// `out_dir`. Nothing is left behind when any step fails.
inline ScenarioRun run_scenario(const ScenarioConfig& cfg, const std::filesystem::path& out_dir)
{
  ScenarioRun run;
  run.result = run_simulation(cfg);
  run.metrics = compute_metrics(cfg, run.result.trace);
  std::filesystem::create_directories(out_dir);
  run.trace_path = out_dir / (cfg.run.name + ".csv");
  run.metrics_path = out_dir / (cfg.run.name + ".metrics.json");

  detail::StagedFiles files;
  files.write(run.trace_path, trace_csv_text(run.result.trace));
  files.write(run.metrics_path, metrics_record(cfg, run.result, run.metrics).dump(2) + "\n");
  files.commit();
  return run;
}

// ---------------------------------------------------------------------------
// Hysteresis loop
// ---------------------------------------------------------------------------

struct LoopPoint
{
  int branch;  // +1 rising, -1 falling
  double pressure;
  double tip_y;
};

/// Quasi-static staircase through the plant's tip map: p_min -> p_max in
/// `steps` equal stairs and back, starting from a tube that was depressurized
/// to p_min. Each point is the tip once the stair pressure has been reached.
inline std::vector<LoopPoint> hysteresis_sweep(const ScenarioConfig& cfg)
{
  check(cfg);
  const TipMap map = effective_tip_map(cfg);
  validate(map);
  const auto& h = cfg.hysteresis;
  const auto n = static_cast<std::int64_t>(h.steps);
  auto level = [&](std::int64_t i) {
    return h.p_min + (h.p_max - h.p_min) * static_cast<double>(i) / static_cast<double>(n);
  };

  std::vector<LoopPoint> pts;
  pts.reserve(static_cast<std::size_t>(2 * n + 1));
  PlayState play = settled_from_above(map, h.p_min);
  for (std::int64_t i = 0; i <= n; ++i) {
    const auto out = tip_position(map, play, level(i));
    play = out.play;
    pts.push_back({+1, level(i), out.tip_y});
  }
  for (std::int64_t i = n - 1; i >= 0; --i) {
    const auto out = tip_position(map, play, level(i));
    play = out.play;
    pts.push_back({-1, level(i), out.tip_y});
  }
  return pts;
}

/// Enclosed area (Pa*mm) of the loop traced by the points, closed back to the
/// first point.
inline double loop_area(const std::vector<LoopPoint>& pts)
{
  double twice = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& a = pts[i];
    const auto& b = pts[(i + 1) % pts.size()];
    twice += a.pressure * b.tip_y - b.pressure * a.tip_y;
  }
  return std::abs(twice) / 2.0;
}

inline std::string loop_csv_text(const std::vector<LoopPoint>& pts)
{
  std::ostringstream os;
  os << "branch,pressure,tip_y\n";
  for (const auto& p : pts) {
    os << (p.branch > 0 ? "up" : "down") << ',' << text::format_double(p.pressure) << ','
       << text::format_double(p.tip_y) << '\n';
  }
  return os.str();
}

struct HysteresisRun
{
  std::vector<LoopPoint> points;
  double area{0.0};
  std::filesystem::path loop_path;
};

inline HysteresisRun run_hysteresis(const ScenarioConfig& cfg, const std::filesystem::path& out_dir)
{
  HysteresisRun run;
  run.points = hysteresis_sweep(cfg);
  run.area = loop_area(run.points);
  std::filesystem::create_directories(out_dir);
  run.loop_path = out_dir / (cfg.run.name + ".loop.csv");
  detail::StagedFiles files;
  files.write(run.loop_path, loop_csv_text(run.points));
  files.commit();
  return run;
}

// ---------------------------------------------------------------------------
// Parameter sweep
// ---------------------------------------------------------------------------

struct SweepRow
{
  std::string value;
  RunMetrics metrics;
  double volume_residual{0.0};
};

/// One run per value of `key`, in the order given. Runs execute concurrently;
/// each works on its own config copy. All bad values are reported together.
inline std::vector<SweepRow> sweep(const ScenarioConfig& base, const std::string& key,
                                   const std::vector<std::string>& values)
{
  std::vector<std::string> faults;
  if (!find_field(key)) {
    faults.push_back("unknown sweep parameter '" + key + "'");
    throw ConfigError(std::move(faults));
  }
  if (values.empty()) throw ConfigError({"sweep needs at least one value"});

  std::vector<ScenarioConfig> configs;
  for (const auto& v : values) {
    ScenarioConfig c = base;
    if (auto msg = set_config_value(c, key, v); !msg.empty()) {
      faults.push_back(msg);
      continue;
    }
    for (auto& f : config_faults(c)) faults.push_back(key + " = " + v + ": " + f);
    configs.push_back(std::move(c));
  }
  if (!faults.empty()) throw ConfigError(std::move(faults));

  std::vector<std::future<SweepRow>> jobs;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    jobs.push_back(std::async(std::launch::async, [&configs, &values, i] {
      const auto r = run_simulation(configs[i]);
      return SweepRow{values[i], compute_metrics(configs[i], r.trace), volume_residual(r)};
    }));
  }
  std::vector<SweepRow> rows;
  for (auto& j : jobs) rows.push_back(j.get());
  return rows;
}

inline std::string sweep_csv_text(const std::string& key, const std::vector<SweepRow>& rows)
{
  using text::format_double;
  std::ostringstream os;
  os << key
     << ",rms_tracking_error,max_abs_error,settle_time,settled,switch_count_hp,switch_count_lp,"
        "final_steady_error,volume_residual\n";
  for (const auto& r : rows) {
    const auto& m = r.metrics;
    os << r.value << ',' << format_double(m.rms_tracking_error) << ',' << format_double(m.max_abs_error) << ','
       << format_double(m.settle_time) << ',' << (m.settled ? 1 : 0) << ',' << m.switch_count_hp << ','
       << m.switch_count_lp << ',' << format_double(m.final_steady_error) << ','
       << format_double(r.volume_residual) << '\n';
  }
  return os.str();
}

inline std::filesystem::path write_sweep(const ScenarioConfig& base, const std::string& key,
                                         const std::vector<SweepRow>& rows, const std::filesystem::path& out_dir)
{
  std::filesystem::create_directories(out_dir);
  const auto path = out_dir / (base.run.name + ".sweep.csv");
  detail::StagedFiles files;
  files.write(path, sweep_csv_text(key, rows));
  files.commit();
  return path;
}

}  // namespace softdrive
