#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace softdrive {

/// Static pressure -> tip-Y map behind a play (backlash) operator.
///
/// The operator output is an effective pressure y that only follows the input
/// p once p has travelled through the play: y <- max(p - w, min(p + w, y)).
/// The play offset y - p therefore stays within [-w, w]. The tip coordinate is
/// clamp(gain * y + offset, saturation_lo, saturation_hi).
struct TipMap
{
  double gain{1.8e-5};  // mm/Pa
  double offset{0.0};   // mm
  double saturation_lo{-1e9};
  double saturation_hi{1e9};
  double play_width{0.0};  // Pa
};

/// Memory of the play operator: the last effective pressure.
struct PlayState
{
  double effective_pressure{0.0};  // Pa

  /// Offset of the effective pressure from the input it was computed for.
  double offset_from(double p) const { return effective_pressure - p; }
};

struct TipOutput
{
  double tip_y;  // mm
  PlayState play;
};

inline void validate(const TipMap& m)
{
  if (!(m.gain >= 0.0) || !std::isfinite(m.gain)) {
    throw std::invalid_argument("tip gain must be non-negative and finite");
  }
  if (!(m.play_width >= 0.0) || !std::isfinite(m.play_width)) {
    throw std::invalid_argument("tip play width must be non-negative and finite");
  }
  if (!(m.saturation_lo <= m.saturation_hi)) {
    throw std::invalid_argument("tip saturation bounds are inverted");
  }
}

/// Play state of a tube that reached `p` while being depressurized, i.e. it
/// sits on the descending branch.
inline PlayState settled_from_above(const TipMap& map, double p) { return {p + map.play_width}; }

inline double static_tip(const TipMap& map, double effective_pressure)
{
  return std::clamp(map.gain * effective_pressure + map.offset, map.saturation_lo, map.saturation_hi);
}

inline TipOutput tip_position(const TipMap& map, PlayState play, double p)
{
  if (!(p >= 0.0) || !std::isfinite(p)) {
    throw std::invalid_argument("tip_position requires a finite p >= 0");
  }
  const double w = map.play_width;
  const double y = std::max(p - w, std::min(p + w, play.effective_pressure));
  return {static_tip(map, y), PlayState{y}};
}

}  // namespace softdrive
