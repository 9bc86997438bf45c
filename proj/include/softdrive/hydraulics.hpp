#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace softdrive {

/// Orifice described by its turbulent flow factor and the laminar transition
/// pressure. Flow factor in m^3/(s*sqrt(Pa)), transition pressure in Pa.
struct OrificeModel
{
  double k_v{1e-8};
  double p_tr{1000.0};
};

/// Flow factor from a nominal operating point: Q_nom = K_v * sqrt(dp_nom).
inline double flow_factor_from_nominal(double q_nom, double dp_nom)
{
  if (!(q_nom > 0.0) || !(dp_nom > 0.0)) {
    throw std::invalid_argument("nominal flow and pressure must be positive");
  }
  return q_nom / std::sqrt(dp_nom);
}

inline void validate(const OrificeModel& m)
{
  if (!(m.k_v > 0.0) || !std::isfinite(m.k_v)) {
    throw std::invalid_argument("orifice k_v must be positive and finite");
  }
  if (!(m.p_tr > 0.0) || !std::isfinite(m.p_tr)) {
    throw std::invalid_argument("orifice p_tr must be positive and finite");
  }
}

/**
 * Volume flow from port 1 to port 2 through a partially opened orifice.
 *
 * Above the transition pressure the flow is turbulent, op*K_v*sgn(dp)*sqrt|dp|.
 * Below it a cubic branch op*K_v*dp/(2*sqrt(p_tr))*(3 - |dp|/p_tr) takes over,
 * which matches value and slope at |dp| = p_tr and stays finite-sloped at
 * dp = 0.
 */
inline double orifice_flow(const OrificeModel& model, double opening, double p1, double p2)
{
  if (!(opening >= 0.0 && opening <= 1.0)) {
    throw std::invalid_argument("orifice opening must lie in [0, 1]");
  }
  if (!std::isfinite(p1) || !std::isfinite(p2)) {
    throw std::invalid_argument("orifice pressures must be finite");
  }
  validate(model);

  const double dp = p1 - p2;
  const double adp = std::abs(dp);
  if (adp > model.p_tr) {
    return opening * model.k_v * std::copysign(std::sqrt(adp), dp);
  }
  return opening * model.k_v * dp / (2.0 * std::sqrt(model.p_tr)) * (3.0 - adp / model.p_tr);
}

/// Linear elastomer tube: p = c_a * v. Compliance-only, no inertia or damping.
struct TubeModel
{
  double c_a{3.3e11};  // Pa/m^3
};

inline double tube_pressure(const TubeModel& model, double volume)
{
  if (!(volume >= 0.0)) {
    throw std::invalid_argument("tube volume must be non-negative");
  }
  return model.c_a * volume;
}

inline double tube_volume(const TubeModel& model, double pressure)
{
  if (!(pressure >= 0.0)) {
    throw std::invalid_argument("tube pressure must be non-negative");
  }
  return pressure / model.c_a;
}

}  // namespace softdrive
