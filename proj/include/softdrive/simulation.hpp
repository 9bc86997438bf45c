#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "softdrive/config.hpp"
#include "softdrive/controllers.hpp"
#include "softdrive/plant.hpp"
#include "softdrive/reference.hpp"
#include "softdrive/sensor.hpp"

namespace softdrive {

/// Fixed-step clock; time is always step_index * dt so it never drifts.
struct SimClock
{
  double dt{0.0005};
  std::int64_t step_index{0};

  double t() const { return static_cast<double>(step_index) * dt; }
  void tick() { ++step_index; }
};

/// One row per plant step: the state at t and the commands applied over
/// [t, t + dt).
struct SimRecord
{
  double t{0.0};
  double ref{0.0};
  double p_tube{0.0};
  double v_tube{0.0};
  double tip_y{0.0};
  bool hp_cmd{false};
  bool lp_cmd{false};
  double hp_arm{0.0};
  double lp_arm{0.0};
  double sensed_pos{0.0};
  double sensed_p{0.0};

  friend bool operator==(const SimRecord&, const SimRecord&) = default;
};

using SimTrace = std::vector<SimRecord>;

struct SimResult
{
  SimTrace trace;
  HydraulicState final_state;
  std::vector<double> est_pressure;  // controller estimate of p_tube at each record (model-based loops)
  double initial_volume{0.0};
  double net_inflow{0.0};   // sum of (Q_HP + Q_LP) * dt
  double throughput{0.0};   // sum of |Q_HP| * dt + |Q_LP| * dt
  std::size_t clamp_events{0};
};

inline std::int64_t steps_for(double duration, double dt) { return std::llround(duration / dt); }

/**
 * Closed-loop run of one scenario.
 *
 * Controllers are ticked on their own grids (model-based every sample_period,
 * switching every switching_period, PI outer loop every outer_period) and
 * their outputs are held for whole command quanta. Sensors read the recorded
 * history, so delays and sample-and-hold come out of the same trace that is
 * written to disk.
 */
inline SimResult run_simulation(const ScenarioConfig& cfg)
{
  check(cfg);
  const PlantParams plant = plant_params(cfg);
  validate(plant);
  const ReferenceSignal reference = reference_signal(cfg);
  validate(reference);

  const double dt = cfg.run.dt;
  const std::int64_t n_steps = steps_for(cfg.run.duration, dt);
  const std::int64_t quantum_steps = steps_for(cfg.controller.quantum, dt);
  const std::int64_t sample_steps = steps_for(cfg.controller.sample_period, dt);
  const std::int64_t window_steps = steps_for(cfg.controller.switching_period, dt);
  const std::int64_t outer_steps = steps_for(cfg.controller.outer_period, dt);

  NoisySensor pos_sensor(position_sensor(cfg), cfg.run.seed);
  NoisySensor p_sensor(pressure_sensor(cfg), cfg.run.seed ^ 0x9e3779b97f4a7c15ULL);

  const ModelBasedParams mb_params = model_based_params(cfg);
  ModelBasedState mb_state = model_based_init(mb_params, cfg.plant.initial_pressure);
  const SwitchingParams sw_params = switching_params(cfg);
  SwitchingState sw_state;
  std::vector<ValveCommand> schedule;
  const PiParams pi = pi_params(cfg);
  PiState pi_state;
  double inner_ref = cfg.controller.bias;
  ValveCommand held = kHold;

  const ControllerType type = cfg.controller.type;
  const bool model_based_inner = type == ControllerType::model_based || type == ControllerType::pi_cascade;

  SimResult out;
  out.trace.reserve(static_cast<std::size_t>(n_steps));
  if (model_based_inner) out.est_pressure.reserve(static_cast<std::size_t>(n_steps));
  std::vector<double> tip_history;
  std::vector<double> p_history;
  tip_history.reserve(static_cast<std::size_t>(n_steps));
  p_history.reserve(static_cast<std::size_t>(n_steps));

  HydraulicState state = initial_state(plant, cfg.plant.initial_pressure);
  out.initial_volume = state.v_tube;
  SimClock clock{dt, 0};

  for (std::int64_t n = 0; n < n_steps; ++n, clock.tick()) {
    const double t = clock.t();
    const double ref = reference_eval(reference, t);
    tip_history.push_back(state.tip_y);
    p_history.push_back(state.p_tube);
    const double sensed_pos = pos_sensor.read(tip_history, dt, t);
    const double sensed_p = p_sensor.read(p_history, dt, t);
    const double est_now = mb_state.est_pressure;

    switch (type) {
      case ControllerType::none:
        held = kHold;
        break;
      case ControllerType::model_based:
        if (n % sample_steps == 0) {
          const auto d = model_based_tick(mb_params, mb_state, ref, cfg.plant.p_supply, cfg.plant.p_tank);
          held = d.command;
          mb_state = d.state;
        }
        break;
      case ControllerType::pi_cascade:
        if (n % outer_steps == 0) {
          const auto o = pi_tick(pi, pi_state, ref - sensed_pos, cfg.controller.outer_period);
          inner_ref = o.p_ref;
          pi_state = o.state;
        }
        if (n % sample_steps == 0) {
          const auto d =
              model_based_tick(mb_params, mb_state, inner_ref, cfg.plant.p_supply, cfg.plant.p_tank);
          held = d.command;
          mb_state = d.state;
        }
        break;
      case ControllerType::switching: {
        const std::int64_t phase = n % window_steps;
        if (phase == 0) {
          auto d = switching_tick(sw_params, sw_state, ref - sensed_pos);
          schedule = std::move(d.schedule);
          sw_state = d.state;
        }
        const auto q = static_cast<std::size_t>(phase / quantum_steps);
        held = q < schedule.size() ? schedule[q] : kHold;
        break;
      }
    }

    out.trace.push_back(SimRecord{t, ref, state.p_tube, state.v_tube, state.tip_y, held.hp, held.lp,
                                  state.hp_valve.position, state.lp_valve.position, sensed_pos, sensed_p});
    if (model_based_inner) out.est_pressure.push_back(est_now);

    const auto step = plant_step(plant, state, held.hp, held.lp, dt);
    out.net_inflow += (step.q_hp + step.q_lp) * dt;
    out.throughput += std::abs(step.q_hp) * dt + std::abs(step.q_lp) * dt;
    if (step.clamped) ++out.clamp_events;
    state = step.state;
  }
  out.final_state = state;
  return out;
}

}  // namespace softdrive
