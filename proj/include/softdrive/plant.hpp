#pragma once

#include <algorithm>
#include <stdexcept>

#include "softdrive/hydraulics.hpp"
#include "softdrive/tip_map.hpp"
#include "softdrive/valve.hpp"

namespace softdrive {

/// Physical parameters of the drive: supply, tank, two valves and the tube.
struct PlantParams
{
  double p_supply{600e3};     // Pa
  double p_tank{0.0};         // Pa
  double supply_droop{0.0};   // Pa per m^3/s of HP flow
  OrificeModel hp_orifice{};
  OrificeModel lp_orifice{};
  ValveTiming hp_timing{};
  ValveTiming lp_timing{};
  TubeModel tube{};
  TipMap tip{};
};

struct HydraulicState
{
  double p_supply{0.0};  // effective supply pressure for the next step
  double p_tank{0.0};
  double v_tube{0.0};    // m^3
  double p_tube{0.0};    // Pa
  ValveState hp_valve{};
  ValveState lp_valve{};
  PlayState play{};
  double tip_y{0.0};     // mm
};

struct PlantStepResult
{
  HydraulicState state;
  double q_hp{0.0};  // m^3/s into the tube over the step
  double q_lp{0.0};
  bool clamped{false};  // volume would have gone negative
};

inline void validate(const PlantParams& p)
{
  if (!(p.p_supply > 0.0)) throw std::invalid_argument("p_supply must be positive");
  if (!(p.p_tank >= 0.0)) throw std::invalid_argument("p_tank must be non-negative");
  if (!(p.p_tank < p.p_supply)) throw std::invalid_argument("p_tank must be below p_supply");
  if (!(p.supply_droop >= 0.0)) throw std::invalid_argument("supply_droop must be non-negative");
  if (!(p.tube.c_a > 0.0)) throw std::invalid_argument("tube c_a must be positive");
  validate(p.hp_orifice);
  validate(p.lp_orifice);
  validate(p.hp_timing);
  validate(p.lp_timing);
  validate(p.tip);
}

/// Plant at rest with both valves closed and the tube at `p_tube`. The tip
/// starts on the descending hysteresis branch, as after depressurizing.
inline HydraulicState initial_state(const PlantParams& params, double p_tube)
{
  HydraulicState s;
  s.p_supply = params.p_supply;
  s.p_tank = params.p_tank;
  s.v_tube = tube_volume(params.tube, p_tube);
  s.p_tube = tube_pressure(params.tube, s.v_tube);
  const auto tip = tip_position(params.tip, settled_from_above(params.tip, s.p_tube), s.p_tube);
  s.play = tip.play;
  s.tip_y = tip.tip_y;
  return s;
}

/// One explicit-Euler step: move both armatures, evaluate the orifice flows at
/// the new openings against the start-of-step pressures, integrate the tube
/// volume, then refresh pressure and tip.
inline PlantStepResult plant_step(const PlantParams& params, const HydraulicState& state, bool hp_cmd,
                                  bool lp_cmd, double dt)
{
  if (!(dt > 0.0)) {
    throw std::invalid_argument("plant_step requires dt > 0");
  }
  PlantStepResult r;
  HydraulicState& s = r.state;
  s = state;

  s.hp_valve = valve_step(params.hp_timing, state.hp_valve, hp_cmd, dt);
  s.lp_valve = valve_step(params.lp_timing, state.lp_valve, lp_cmd, dt);

  r.q_hp = orifice_flow(params.hp_orifice, s.hp_valve.position, state.p_supply, state.p_tube);
  r.q_lp = orifice_flow(params.lp_orifice, s.lp_valve.position, state.p_tank, state.p_tube);

  const double v_next = state.v_tube + (r.q_hp + r.q_lp) * dt;
  if (v_next < 0.0) {
    r.clamped = true;
    s.v_tube = 0.0;
  } else {
    s.v_tube = v_next;
  }
  s.p_tube = tube_pressure(params.tube, s.v_tube);
  s.p_supply = std::max(params.p_tank, params.p_supply - params.supply_droop * std::max(r.q_hp, 0.0));

  const auto tip = tip_position(params.tip, state.play, s.p_tube);
  s.play = tip.play;
  s.tip_y = tip.tip_y;
  return r;
}

}  // namespace softdrive
