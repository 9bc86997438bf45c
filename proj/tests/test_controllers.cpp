#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "softdrive/controllers.hpp"
#include "oracles.hpp"

using namespace softdrive;

namespace {

ModelBasedParams default_model()
{
  ModelBasedParams m;
  m.hp_orifice = {1e-8, 1000.0};
  m.lp_orifice = {1e-8, 1000.0};
  m.tube = {3.3e11};
  m.tolerance = 10e3;
  m.sample_period = 0.005;
  return m;
}

}  // namespace

TEST(ModelBased, ExactEstimateHolds)
{
  const auto m = default_model();
  const auto s = model_based_init(m, 180e3);
  const auto d = model_based_tick(m, s, s.est_pressure, 600e3, 0.0);
  EXPECT_EQ(d.command, kHold);
  EXPECT_EQ(d.state.est_volume, s.est_volume);
  EXPECT_EQ(d.state.est_pressure, s.est_pressure);
}

TEST(ModelBased, FillsTowardHigherReference)
{
  // Predictions from 200 kPa: hold 200.0, fill 210.4, drain 192.6 kPa.
  const auto m = default_model();
  const auto s = model_based_init(m, 200e3);
  const auto d = model_based_tick(m, s, 250e3, 600e3, 0.0);
  EXPECT_EQ(d.command, kFill);
  EXPECT_NEAR(d.state.est_pressure, 210435.51627855565, 1e-4);
  EXPECT_DOUBLE_EQ(d.state.est_pressure, m.tube.c_a * d.state.est_volume);
}

TEST(ModelBased, DrainsTowardLowerReference)
{
  const auto m = default_model();
  const auto s = model_based_init(m, 200e3);
  const auto d = model_based_tick(m, s, 20e3, 600e3, 0.0);
  EXPECT_EQ(d.command, kDrain);
  EXPECT_NEAR(d.state.est_pressure, 200e3 - 7379.024325749306, 1e-4);
}

TEST(ModelBased, DeadbandIsIdle)
{
  const auto m = default_model();
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> pd(50e3, 500e3), ed(-1.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const auto s = model_based_init(m, pd(rng));
    const double ref = s.est_pressure + ed(rng) * m.tolerance;
    EXPECT_EQ(model_based_tick(m, s, ref, 600e3, 0.0).command, kHold);
  }
}

TEST(ModelBased, MatchesBruteForceEnumeration)
{
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> pd(0.0, 600e3), tol(0.0, 20e3), kv(2e-9, 5e-8), ptank(0.0, 50e3);
  int fills = 0, drains = 0;
  for (int i = 0; i < 5000; ++i) {
    auto m = default_model();
    m.tolerance = tol(rng);
    m.hp_orifice.k_v = kv(rng);
    m.lp_orifice.k_v = kv(rng);
    const double pt = ptank(rng);
    const double ps = 600e3;
    const auto s = model_based_init(m, pd(rng));
    const double ref = pd(rng);
    const auto got = model_based_tick(m, s, ref, ps, pt).command;
    ASSERT_EQ(got, oracle::model_based_choice(m, s.est_volume, ref, ps, pt)) << "case " << i;
    ASSERT_FALSE(got.hp && got.lp);
    fills += got == kFill;
    drains += got == kDrain;
  }
  EXPECT_GT(fills, 100);
  EXPECT_GT(drains, 100);
}

TEST(ModelBased, TieBreakPrefersHold)
{
  // Fill overshoots by exactly as much as holding undershoots: hold wins.
  auto m = default_model();
  m.tolerance = 0.0;
  const auto s = model_based_init(m, 200e3);
  const double fill_p = model_based_tick(m, s, 1e9, 600e3, 0.0).state.est_pressure;
  const double ref = 0.5 * (s.est_pressure + fill_p);
  const double e_hold = std::abs(ref - s.est_pressure);
  const double e_fill = std::abs(ref - fill_p);
  if (e_hold == e_fill) {
    EXPECT_EQ(model_based_tick(m, s, ref, 600e3, 0.0).command, kHold);
  } else {
    EXPECT_EQ(model_based_tick(m, s, ref, 600e3, 0.0).command, e_hold < e_fill ? kHold : kFill);
  }
}

// ---------------------------------------------------------------------------

TEST(Switching, SignIsThreeLevelAndOdd)
{
  const double th = 0.5;
  EXPECT_EQ(switching_sign(0.0, th), 0);
  EXPECT_EQ(switching_sign(0.49, th), 0);
  EXPECT_EQ(switching_sign(-0.49, th), 0);
  EXPECT_EQ(switching_sign(0.5, th), 0);
  EXPECT_EQ(switching_sign(0.51, th), 1);
  EXPECT_EQ(switching_sign(-0.51, th), -1);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> ed(-5, 5);
  for (int i = 0; i < 1000; ++i) {
    const double e = ed(rng);
    EXPECT_EQ(switching_sign(e, th), -switching_sign(-e, th));
  }
}

TEST(Switching, InsideBandBothOff)
{
  const SwitchingParams p{0.5, 0.1, 0.2, 0.005};
  const auto d = switching_tick(p, SwitchingState{}, 0.3);
  EXPECT_EQ(d.sign, 0);
  for (const auto& c : d.schedule) EXPECT_EQ(c, kHold);
}

TEST(Switching, PositiveErrorPulsesHighPressure)
{
  // duty 0.2 over 100 ms: 20 ms of HP, one contiguous pulse at window start.
  const SwitchingParams p{0.5, 0.1, 0.2, 0.005};
  const auto d = switching_tick(p, SwitchingState{}, 1.0);
  ASSERT_EQ(d.schedule.size(), 20u);
  double hp_time = 0.0;
  for (std::size_t i = 0; i < d.schedule.size(); ++i) {
    EXPECT_FALSE(d.schedule[i].lp);
    if (d.schedule[i].hp) hp_time += p.quantum;
    EXPECT_EQ(d.schedule[i].hp, i < 4);
  }
  EXPECT_NEAR(hp_time, 0.020, 1e-12);
}

TEST(Switching, NegativeErrorPulsesLowPressure)
{
  const SwitchingParams p{0.5, 0.1, 0.2, 0.005};
  const auto d = switching_tick(p, SwitchingState{}, -1.0);
  EXPECT_EQ(d.sign, -1);
  std::size_t lp = 0;
  for (const auto& c : d.schedule) {
    EXPECT_FALSE(c.hp);
    lp += c.lp;
  }
  EXPECT_EQ(lp, 4u);
}

TEST(Switching, PulseFlooredToQuantum)
{
  // 22 % of 100 ms is 22 ms -> four 5 ms quanta; 3 % -> no pulse at all.
  EXPECT_EQ(pulse_quanta(SwitchingParams{0.5, 0.1, 0.22, 0.005}), 4u);
  EXPECT_EQ(pulse_quanta(SwitchingParams{0.5, 0.1, 0.15, 0.005}), 3u);
  EXPECT_EQ(pulse_quanta(SwitchingParams{0.5, 0.1, 0.03, 0.005}), 0u);
  EXPECT_THROW(switching_tick(SwitchingParams{0.0, 0.1, 0.2, 0.005}, SwitchingState{}, 1.0),
               std::invalid_argument);
}

// ---------------------------------------------------------------------------

TEST(Pi, ZeroErrorGivesBias)
{
  const PiParams p{2000.0, 4000.0, 150e3, 0.0, 400e3};
  EXPECT_EQ(pi_tick(p, PiState{}, 0.0, 0.05).p_ref, 150e3);
}

TEST(Pi, ConstantErrorRampsUntilClamp)
{
  const PiParams p{2000.0, 4000.0, 150e3, 0.0, 400e3};
  PiState s;
  double prev = -1.0;
  for (int i = 0; i < 2000; ++i) {
    const auto o = pi_tick(p, s, 1.0, 0.05);
    EXPECT_GE(o.p_ref, prev);
    EXPECT_LE(o.p_ref, p.out_max);
    prev = o.p_ref;
    s = o.state;
  }
  EXPECT_EQ(prev, p.out_max);
}

TEST(Pi, AntiWindupReleasesWithinOneTick)
{
  // Hand trace: kp = 2000, ki = 4000, bias 150 kPa, max 400 kPa, dt 0.05.
  // Saturated integral is (400e3 - 150e3) / 4000 = 62.5 mm*s. After e -> -1:
  // integral 62.45, output 150e3 - 2000 + 4000 * 62.45 = 397 800 Pa.
  const PiParams p{2000.0, 4000.0, 150e3, 0.0, 400e3};
  PiState s;
  for (int i = 0; i < 5000; ++i) s = pi_tick(p, s, 5.0, 0.05).state;
  EXPECT_DOUBLE_EQ(s.integral, 62.5);
  const auto o = pi_tick(p, s, -1.0, 0.05);
  EXPECT_NEAR(o.p_ref, 397800.0, 1e-6);
  EXPECT_LT(o.p_ref, p.out_max);
}

TEST(ControllersProperty, NoControllerEverCommandsBothValves)
{
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> pd(0.0, 600e3), ed(-5.0, 5.0);
  const auto m = default_model();
  const SwitchingParams sp{0.5, 0.1, 0.2, 0.005};
  for (int i = 0; i < 2000; ++i) {
    const auto d = model_based_tick(m, model_based_init(m, pd(rng)), pd(rng), 600e3, 0.0);
    ASSERT_FALSE(d.command.hp && d.command.lp);
    for (const auto& c : switching_tick(sp, SwitchingState{}, ed(rng)).schedule) ASSERT_FALSE(c.hp && c.lp);
  }
}
