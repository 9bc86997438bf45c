#include <cmath>
#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "softdrive/hydraulics.hpp"

using namespace softdrive;

namespace {

// Turbulent branch evaluated in extended precision, independent of the
// implementation's branch selection.
long double turbulent_oracle(long double kv, long double opening, long double dp)
{
  return opening * kv * (dp < 0 ? -1.0L : 1.0L) * std::sqrt(std::fabs(dp));
}

long double laminar_oracle(long double kv, long double ptr, long double opening, long double dp)
{
  return opening * kv * dp / (2.0L * std::sqrt(ptr)) * (3.0L - std::fabs(dp) / ptr);
}

}  // namespace

TEST(OrificeFlow, ZeroPressureDifferenceGivesZeroFlow)
{
  const OrificeModel m{1e-8, 1000.0};
  for (double op : {0.0, 0.3, 1.0}) {
    EXPECT_EQ(orifice_flow(m, op, 2e5, 2e5), 0.0);
  }
}

TEST(OrificeFlow, ClosedOrificeGivesZeroFlow)
{
  const OrificeModel m{1e-8, 1000.0};
  for (double dp : {-5e5, -10.0, 0.0, 500.0, 4e5}) {
    EXPECT_EQ(orifice_flow(m, 0.0, 1e5 + dp, 1e5), 0.0);
  }
}

TEST(OrificeFlow, TurbulentReferencePoint)
{
  // K_v * sqrt(400 kPa) = 6.324555320336759e-6 m^3/s (checked at 40 digits).
  const OrificeModel m{1e-8, 1000.0};
  const double q = orifice_flow(m, 1.0, 600e3, 200e3);
  EXPECT_NEAR(q, 6.324555320336759e-6, 1e-20);
  EXPECT_NEAR(q, static_cast<double>(turbulent_oracle(1e-8L, 1.0L, 4e5L)), 1e-21);
}

TEST(OrificeFlow, BranchesMeetAtTransition)
{
  const OrificeModel m{2.5e-8, 1500.0};
  const long double at_ptr = turbulent_oracle(m.k_v, 0.7L, m.p_tr);
  EXPECT_NEAR(static_cast<double>(laminar_oracle(m.k_v, m.p_tr, 0.7L, m.p_tr)), static_cast<double>(at_ptr),
              1e-22);
  EXPECT_NEAR(orifice_flow(m, 0.7, m.p_tr, 0.0), static_cast<double>(at_ptr), 1e-20);
}

TEST(OrificeFlow, LinearInOpening)
{
  const OrificeModel m{1e-8, 1000.0};
  for (double dp : {-3e5, -400.0, 250.0, 2e5}) {
    const double full = orifice_flow(m, 1.0, 3e5 + dp, 3e5);
    EXPECT_NEAR(orifice_flow(m, 0.25, 3e5 + dp, 3e5), 0.25 * full, 1e-15 * std::abs(full));
  }
}

TEST(OrificeFlow, OddSymmetryAndMonotonicity)
{
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> dpd(-6e5, 6e5);
  std::uniform_real_distribution<double> opd(0.01, 1.0);
  const OrificeModel m{1e-8, 1000.0};
  for (int i = 0; i < 2000; ++i) {
    const double dp = dpd(rng);
    const double op = opd(rng);
    EXPECT_EQ(orifice_flow(m, op, dp, 0.0), -orifice_flow(m, op, 0.0, dp));
    const double q = orifice_flow(m, op, 7e5 + dp, 7e5);
    if (dp != 0.0) EXPECT_EQ(std::signbit(q), std::signbit(dp));
    const double q_more = orifice_flow(m, op, 7e5 + dp + 50.0, 7e5);
    EXPECT_GT(q_more, q);
  }
}

TEST(OrificeFlow, RejectsBadInputs)
{
  const OrificeModel m{1e-8, 1000.0};
  EXPECT_THROW(orifice_flow(m, -0.01, 1.0, 0.0), std::invalid_argument);
  EXPECT_THROW(orifice_flow(m, 1.01, 1.0, 0.0), std::invalid_argument);
  EXPECT_THROW(orifice_flow(m, 0.5, std::numeric_limits<double>::quiet_NaN(), 0.0), std::invalid_argument);
  EXPECT_THROW(orifice_flow(m, 0.5, 0.0, std::numeric_limits<double>::infinity()), std::invalid_argument);
  EXPECT_THROW(orifice_flow(OrificeModel{1e-8, 0.0}, 0.5, 1.0, 0.0), std::invalid_argument);
  EXPECT_THROW(orifice_flow(OrificeModel{0.0, 1000.0}, 0.5, 1.0, 0.0), std::invalid_argument);
}

TEST(OrificeFlow, FlowFactorFromNominalPoint)
{
  EXPECT_NEAR(flow_factor_from_nominal(6.324555320336759e-06, 4e5), 1e-8, 1e-22);
  EXPECT_THROW(flow_factor_from_nominal(0.0, 4e5), std::invalid_argument);
  EXPECT_THROW(flow_factor_from_nominal(1e-6, -1.0), std::invalid_argument);
}

TEST(TubePressure, LinearThroughOrigin)
{
  const TubeModel tube{3.3e11};
  EXPECT_EQ(tube_pressure(tube, 0.0), 0.0);
  EXPECT_NEAR(tube_pressure(tube, 6.0606e-7), 199999.8, 1e-6);
  const double v = 4.2e-7;
  EXPECT_DOUBLE_EQ(tube_pressure(tube, 2 * v), 2 * tube_pressure(tube, v));
  EXPECT_THROW(tube_pressure(tube, -1e-12), std::invalid_argument);
}
