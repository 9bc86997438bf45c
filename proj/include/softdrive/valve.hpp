#pragma once

#include <algorithm>
#include <stdexcept>
#include <string_view>

namespace softdrive {

/// Armature timing of an on/off valve, all in seconds.
struct ValveTiming
{
  double delay{0.0};
  double movement_time{0.0};
  double sticking_time{0.0};
};

enum class ValvePhase { closed, delaying, opening, open, closing, stuck };

inline std::string_view to_string(ValvePhase p)
{
  switch (p) {
    case ValvePhase::closed: return "closed";
    case ValvePhase::delaying: return "delaying";
    case ValvePhase::opening: return "opening";
    case ValvePhase::open: return "open";
    case ValvePhase::closing: return "closing";
    case ValvePhase::stuck: return "stuck";
  }
  return "?";
}

/**
 * Armature state machine.
 *
 * A new command is held for `delay` (phase delaying), then the armature ramps
 * linearly over `movement_time` (opening / closing) until it rests (open /
 * closed). A command that reverts during the delay cancels it without motion.
 * A reversal while the armature is moving freezes it for `sticking_time`
 * (phase stuck) before it ramps toward the new target; further reversals while
 * stuck only retarget. Zero movement time makes the ramp instantaneous.
 */
struct ValveState
{
  ValvePhase phase{ValvePhase::closed};
  double position{0.0};
  double timer{0.0};    // time left in delaying / stuck
  bool target{false};   // last accepted command
};

namespace detail {

// Timers that fall within this window of zero are treated as expired, so step
// sizes that divide the timing parameters in exact arithmetic do so here too.
inline constexpr double kTimeEps = 1e-12;

inline ValvePhase moving_phase(bool target) { return target ? ValvePhase::opening : ValvePhase::closing; }

inline ValvePhase resting_phase(double position)
{
  return position >= 1.0 ? ValvePhase::open : ValvePhase::closed;
}

}  // namespace detail

inline void validate(const ValveTiming& t)
{
  if (!(t.delay >= 0.0) || !(t.movement_time >= 0.0) || !(t.sticking_time >= 0.0)) {
    throw std::invalid_argument("valve timing parameters must be non-negative");
  }
}

inline ValveState valve_step(const ValveTiming& timing, ValveState s, bool command, double dt)
{
  if (!(dt > 0.0)) {
    throw std::invalid_argument("valve_step requires dt > 0");
  }

  if (command != s.target) {
    switch (s.phase) {
      case ValvePhase::closed:
      case ValvePhase::open:
        s.phase = ValvePhase::delaying;
        s.timer = timing.delay;
        break;
      case ValvePhase::delaying:
        s.phase = detail::resting_phase(s.position);
        s.timer = 0.0;
        break;
      case ValvePhase::opening:
      case ValvePhase::closing:
        s.phase = ValvePhase::stuck;
        s.timer = timing.sticking_time;
        break;
      case ValvePhase::stuck:
        break;
    }
    s.target = command;
  }

  double remaining = dt;
  while (remaining > detail::kTimeEps) {
    switch (s.phase) {
      case ValvePhase::closed:
      case ValvePhase::open:
        remaining = 0.0;
        break;

      case ValvePhase::delaying:
      case ValvePhase::stuck:
        if (s.timer > remaining + detail::kTimeEps) {
          s.timer -= remaining;
          remaining = 0.0;
        } else {
          remaining -= s.timer;
          s.timer = 0.0;
          s.phase = detail::moving_phase(s.target);
        }
        break;

      case ValvePhase::opening:
      case ValvePhase::closing: {
        const bool up = s.phase == ValvePhase::opening;
        const double goal = up ? 1.0 : 0.0;
        const double need = std::abs(goal - s.position) * timing.movement_time;
        if (need > remaining + detail::kTimeEps) {
          const double delta = remaining / timing.movement_time;
          s.position = std::clamp(up ? s.position + delta : s.position - delta, 0.0, 1.0);
          remaining = 0.0;
        } else {
          remaining -= need;
          s.position = goal;
          s.phase = up ? ValvePhase::open : ValvePhase::closed;
        }
        break;
      }
    }
  }
  return s;
}

}  // namespace softdrive
