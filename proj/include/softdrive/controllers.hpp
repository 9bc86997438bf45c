#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "softdrive/hydraulics.hpp"

namespace softdrive {

/// Pair of on/off valve commands. Both on is never produced by a controller.
struct ValveCommand
{
  bool hp{false};
  bool lp{false};

  friend bool operator==(const ValveCommand&, const ValveCommand&) = default;
};

inline constexpr ValveCommand kHold{false, false};
inline constexpr ValveCommand kFill{true, false};
inline constexpr ValveCommand kDrain{false, true};

/// The three admissible combinations in tie-break order.
inline constexpr std::array<ValveCommand, 3> kFeasibleCommands{kHold, kFill, kDrain};

// ---------------------------------------------------------------------------
// Model-based sensorless pressure control
// ---------------------------------------------------------------------------

/// Controller-side copies of the plant model. These are deliberately separate
/// from PlantParams so that the two can disagree.
struct ModelBasedParams
{
  OrificeModel hp_orifice{};
  OrificeModel lp_orifice{};
  TubeModel tube{};
  double tolerance{10e3};      // Pa
  double sample_period{0.005};  // s
};

struct ModelBasedState
{
  double est_volume{0.0};    // m^3
  double est_pressure{0.0};  // Pa, always tube.c_a * est_volume
};

inline ModelBasedState model_based_init(const ModelBasedParams& params, double p_tube)
{
  const double v = tube_volume(params.tube, p_tube);
  return {v, tube_pressure(params.tube, v)};
}

/// Volume after one sample period under `cmd`, assuming supply, tank and tube
/// pressures stay at their start-of-period values.
inline double model_based_predict_volume(const ModelBasedParams& params, const ModelBasedState& state,
                                         ValveCommand cmd, double p_supply, double p_tank)
{
  double q = 0.0;
  if (cmd.hp) q += orifice_flow(params.hp_orifice, 1.0, p_supply, state.est_pressure);
  if (cmd.lp) q += orifice_flow(params.lp_orifice, 1.0, p_tank, state.est_pressure);
  return std::max(0.0, state.est_volume + q * params.sample_period);
}

struct ModelBasedDecision
{
  ValveCommand command;
  ModelBasedState state;
};

/**
 * One controller tick. Each feasible combination is scored by the pressure
 * error its one-period prediction would leave; holding wins outright when the
 * current estimate is already within tolerance, otherwise the smallest error
 * wins with ties resolved in kFeasibleCommands order. The estimate is then
 * advanced along the chosen prediction.
 */
inline ModelBasedDecision model_based_tick(const ModelBasedParams& params, const ModelBasedState& state,
                                           double p_ref, double p_supply, double p_tank)
{
  if (std::abs(p_ref - state.est_pressure) <= params.tolerance) {
    return {kHold, state};
  }

  ValveCommand best = kHold;
  double best_err = 0.0;
  double best_volume = state.est_volume;
  bool first = true;
  for (const ValveCommand cmd : kFeasibleCommands) {
    const double v = model_based_predict_volume(params, state, cmd, p_supply, p_tank);
    const double err = std::abs(p_ref - tube_pressure(params.tube, v));
    if (first || err < best_err) {
      best = cmd;
      best_err = err;
      best_volume = v;
      first = false;
    }
  }
  return {best, ModelBasedState{best_volume, tube_pressure(params.tube, best_volume)}};
}

// ---------------------------------------------------------------------------
// Switching position control
// ---------------------------------------------------------------------------

struct SwitchingParams
{
  double threshold{0.5};   // mm
  double period{0.1};      // s, decision window
  double duty{0.15};       // fraction of the window a valve is driven
  double quantum{0.005};   // s, shortest command
};

struct SwitchingState
{
  int last_sign{0};
  std::size_t windows{0};
};

/// Three-level signum with a deadband. Errors exactly on +-threshold count as
/// inside the band.
inline int switching_sign(double e_p, double threshold)
{
  if (e_p > threshold) return 1;
  if (e_p < -threshold) return -1;
  return 0;
}

inline std::size_t quanta_per_window(const SwitchingParams& p)
{
  return static_cast<std::size_t>(std::llround(p.period / p.quantum));
}

/// Length in quanta of the single pulse at the start of each active window.
inline std::size_t pulse_quanta(const SwitchingParams& p)
{
  return static_cast<std::size_t>(std::floor(p.duty * p.period / p.quantum + 1e-9));
}

struct SwitchingDecision
{
  int sign;
  std::vector<ValveCommand> schedule;  // one entry per quantum of the window
  SwitchingState state;
};

inline SwitchingDecision switching_tick(const SwitchingParams& params, SwitchingState state, double e_p)
{
  if (!(params.threshold > 0.0)) {
    throw std::invalid_argument("switching threshold must be positive");
  }
  const int u = switching_sign(e_p, params.threshold);
  const std::size_t n = quanta_per_window(params);
  const std::size_t on = std::min(n, pulse_quanta(params));
  std::vector<ValveCommand> schedule(n, kHold);
  if (u != 0) {
    std::fill_n(schedule.begin(), on, u > 0 ? kFill : kDrain);
  }
  state.last_sign = u;
  ++state.windows;
  return {u, std::move(schedule), state};
}

// ---------------------------------------------------------------------------
// PI outer loop (position error -> pressure reference)
// ---------------------------------------------------------------------------

struct PiParams
{
  double kp{2000.0};        // Pa/mm
  double ki{4000.0};        // Pa/(mm*s)
  double bias{150e3};       // Pa
  double out_min{0.0};      // Pa
  double out_max{400e3};    // Pa
};

struct PiState
{
  double integral{0.0};  // mm*s
};

struct PiOutput
{
  double p_ref;
  PiState state;
};

/// PI with the integral confined to the range that keeps bias + ki*integral
/// inside the output limits, followed by an output clamp.
inline PiOutput pi_tick(const PiParams& params, PiState state, double e_p, double dt)
{
  if (!(dt > 0.0)) {
    throw std::invalid_argument("pi_tick requires dt > 0");
  }
  state.integral += e_p * dt;
  if (params.ki > 0.0) {
    const double lo = (params.out_min - params.bias) / params.ki;
    const double hi = (params.out_max - params.bias) / params.ki;
    state.integral = std::clamp(state.integral, std::min(lo, hi), std::max(lo, hi));
  } else {
    state.integral = 0.0;
  }
  const double u = params.bias + params.kp * e_p + params.ki * state.integral;
  return {std::clamp(u, params.out_min, params.out_max), state};
}

}  // namespace softdrive
