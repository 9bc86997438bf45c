#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>

namespace softdrive {

/// Sampled, delayed, quantized measurement channel.
///
/// The reading at time t is the true value at the latest sample instant
/// k * sample_period <= t - transport_delay, rounded to the nearest multiple of
/// `quantization` (ties away from zero). Zero period samples every plant step;
/// zero quantization disables rounding. Reads before the first delayed sample
/// return the initial value.
struct SensorModel
{
  double sample_period{0.005};
  double transport_delay{0.004};
  double quantization{0.0};
  double noise_std{0.0};
};

inline void validate(const SensorModel& s)
{
  if (!(s.sample_period >= 0.0) || !(s.transport_delay >= 0.0) || !(s.quantization >= 0.0) ||
      !(s.noise_std >= 0.0)) {
    throw std::invalid_argument("sensor parameters must be non-negative");
  }
}

inline double quantize(double value, double step)
{
  if (step <= 0.0) return value;
  return step * std::round(value / step);
}

namespace detail {
inline constexpr double kGridEps = 1e-9;
}

/// Sample instant index (or -1 before the first delayed sample) seen at t.
inline std::int64_t sensor_sample_index(const SensorModel& s, double dt, double t)
{
  const double lagged = t - s.transport_delay;
  if (lagged < -detail::kGridEps * dt) return -1;
  const double period = s.sample_period > 0.0 ? s.sample_period : dt;
  return static_cast<std::int64_t>(std::floor(lagged / period + detail::kGridEps));
}

/// Noise-free reading from a history of true values recorded at t_n = n * dt.
inline double sensor_read(const SensorModel& s, std::span<const double> history, double dt, double t)
{
  if (history.empty()) {
    throw std::invalid_argument("sensor_read needs at least the initial value");
  }
  if (!(dt > 0.0)) {
    throw std::invalid_argument("sensor_read requires dt > 0");
  }
  const std::int64_t k = sensor_sample_index(s, dt, t);
  if (k < 0) return quantize(history.front(), s.quantization);
  const double period = s.sample_period > 0.0 ? s.sample_period : dt;
  const double instant = static_cast<double>(k) * period;
  auto idx = static_cast<std::size_t>(std::floor(instant / dt + detail::kGridEps));
  idx = std::min(idx, history.size() - 1);
  return quantize(history[idx], s.quantization);
}

/// Sensor channel with seeded Gaussian noise, one draw per sample instant.
class NoisySensor
{
public:
  NoisySensor(SensorModel model, std::uint64_t seed) : model_(model), rng_(seed) { validate(model_); }

  const SensorModel& model() const { return model_; }

  double read(std::span<const double> history, double dt, double t)
  {
    if (model_.noise_std <= 0.0) return sensor_read(model_, history, dt, t);
    SensorModel raw = model_;
    raw.quantization = 0.0;
    const double clean = sensor_read(raw, history, dt, t);
    const std::int64_t k = sensor_sample_index(model_, dt, t);
    while (drawn_ < k) {
      noise_ = dist_(rng_) * model_.noise_std;
      ++drawn_;
    }
    return quantize(k < 0 ? clean : clean + noise_, model_.quantization);
  }

private:
  SensorModel model_;
  std::mt19937_64 rng_;
  std::normal_distribution<double> dist_{0.0, 1.0};
  std::int64_t drawn_{-1};
  double noise_{0.0};
};

}  // namespace softdrive
