#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>

#include <nlohmann/json.hpp>

#include "softdrive/config.hpp"
#include "softdrive/simulation.hpp"

namespace softdrive {

struct RunMetrics
{
  double rms_tracking_error{0.0};
  double max_abs_error{0.0};
  double settle_time{0.0};  // s; equals the run duration when unsettled
  bool settled{false};
  std::size_t switch_count_hp{0};
  std::size_t switch_count_lp{0};
  double final_steady_error{0.0};
  double band{0.0};
};

/// Pressure loops are scored on ref - p_tube (Pa), position loops on
/// ref - tip_y (mm), both against the true plant.
inline bool tracks_position(const ScenarioConfig& cfg)
{
  return cfg.controller.type == ControllerType::switching || cfg.controller.type == ControllerType::pi_cascade;
}

inline double tracking_error(const ScenarioConfig& cfg, const SimRecord& r)
{
  return tracks_position(cfg) ? r.ref - r.tip_y : r.ref - r.p_tube;
}

/// Position error as seen by the controller (through the position sensor).
inline double sensed_position_error(const SimRecord& r) { return r.ref - r.sensed_pos; }

inline double settle_band(const ScenarioConfig& cfg)
{
  return tracks_position(cfg) ? cfg.controller.threshold : cfg.controller.tolerance;
}

/// Rising edges of a command column.
template <class Get>
std::size_t count_switch_ons(const SimTrace& trace, Get get)
{
  std::size_t n = 0;
  bool prev = false;
  for (const auto& r : trace) {
    const bool on = get(r);
    if (on && !prev) ++n;
    prev = on;
  }
  return n;
}

/// Settle time of an error sequence: first record from which |e| <= band holds
/// through the end.
template <class ErrorOf>
std::pair<double, bool> settle_time_of(const SimTrace& trace, double band, double duration, ErrorOf error_of)
{
  if (trace.empty()) return {duration, false};
  std::size_t first_ok = trace.size();
  for (std::size_t i = trace.size(); i-- > 0;) {
    if (std::abs(error_of(trace[i])) > band) break;
    first_ok = i;
  }
  if (first_ok == trace.size()) return {duration, false};
  return {trace[first_ok].t, true};
}

inline RunMetrics compute_metrics(const ScenarioConfig& cfg, const SimTrace& trace)
{
  RunMetrics m;
  m.band = settle_band(cfg);
  if (trace.empty()) {
    m.settle_time = cfg.run.duration;
    return m;
  }
  double sum_sq = 0.0;
  for (const auto& r : trace) {
    const double e = tracking_error(cfg, r);
    sum_sq += e * e;
    m.max_abs_error = std::max(m.max_abs_error, std::abs(e));
  }
  m.rms_tracking_error = std::sqrt(sum_sq / static_cast<double>(trace.size()));
  const auto [ts, ok] =
      settle_time_of(trace, m.band, cfg.run.duration, [&](const SimRecord& r) { return tracking_error(cfg, r); });
  m.settle_time = ts;
  m.settled = ok;
  m.switch_count_hp = count_switch_ons(trace, [](const SimRecord& r) { return r.hp_cmd; });
  m.switch_count_lp = count_switch_ons(trace, [](const SimRecord& r) { return r.lp_cmd; });
  m.final_steady_error = std::abs(tracking_error(cfg, trace.back()));
  return m;
}

inline nlohmann::json to_json(const RunMetrics& m)
{
  return nlohmann::json{{"rms_tracking_error", m.rms_tracking_error},
                        {"max_abs_error", m.max_abs_error},
                        {"settle_time", m.settle_time},
                        {"settled", m.settled},
                        {"switch_count_hp", m.switch_count_hp},
                        {"switch_count_lp", m.switch_count_lp},
                        {"final_steady_error", m.final_steady_error},
                        {"band", m.band}};
}

}  // namespace softdrive
