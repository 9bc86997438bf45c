#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace softdrive {

enum class ReferenceKind { constant, step_sequence, chirp_sine };

/// Reference signal. Chirp: mid + amp * sin(2*pi*(f0*t + (f1 - f0)*t^2/(2T)))
/// with mid/amp taken from [min, max]; the frequency ramp saturates at f1 after
/// T. Step sequence: levels[i] holds on [times[i], times[i+1]), right-continuous,
/// with levels[0] also used before times[0].
struct ReferenceSignal
{
  ReferenceKind kind{ReferenceKind::constant};
  double value{0.0};
  std::vector<double> levels{};
  std::vector<double> times{};
  double min{150e3};
  double max{250e3};
  double f_start{0.0};
  double f_end{1.0};
  double sweep_time{30.0};
};

inline void validate(const ReferenceSignal& r)
{
  switch (r.kind) {
    case ReferenceKind::constant:
      break;
    case ReferenceKind::step_sequence:
      if (r.levels.empty() || r.levels.size() != r.times.size()) {
        throw std::invalid_argument("step_sequence needs equal, non-empty levels and times");
      }
      for (std::size_t i = 1; i < r.times.size(); ++i) {
        if (!(r.times[i] > r.times[i - 1])) {
          throw std::invalid_argument("step_sequence times must be strictly increasing");
        }
      }
      break;
    case ReferenceKind::chirp_sine:
      if (!(r.max >= r.min)) throw std::invalid_argument("chirp max must be >= min");
      if (!(r.sweep_time > 0.0)) throw std::invalid_argument("chirp sweep_time must be positive");
      if (!(r.f_start >= 0.0) || !(r.f_end >= 0.0)) {
        throw std::invalid_argument("chirp frequencies must be non-negative");
      }
      break;
  }
}

/// Phase in radians of the linear chirp.
inline double chirp_phase(const ReferenceSignal& r, double t)
{
  const double T = r.sweep_time;
  const double df = r.f_end - r.f_start;
  if (t <= T) {
    return 2.0 * std::numbers::pi * (r.f_start * t + df * t * t / (2.0 * T));
  }
  const double at_end = r.f_start * T + df * T / 2.0;
  return 2.0 * std::numbers::pi * (at_end + r.f_end * (t - T));
}

inline double reference_eval(const ReferenceSignal& r, double t)
{
  if (!(t >= 0.0)) {
    throw std::invalid_argument("reference_eval requires t >= 0");
  }
  switch (r.kind) {
    case ReferenceKind::constant:
      return r.value;
    case ReferenceKind::step_sequence: {
      double level = r.levels.front();
      for (std::size_t i = 0; i < r.times.size() && r.times[i] <= t; ++i) {
        level = r.levels[i];
      }
      return level;
    }
    case ReferenceKind::chirp_sine: {
      const double mid = 0.5 * (r.min + r.max);
      const double amp = 0.5 * (r.max - r.min);
      return mid + amp * std::sin(chirp_phase(r, t));
    }
  }
  return r.value;
}

}  // namespace softdrive
