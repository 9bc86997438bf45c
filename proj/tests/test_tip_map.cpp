#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "softdrive/tip_map.hpp"

using namespace softdrive;

namespace {

std::vector<double> sweep_outputs(const TipMap& map, PlayState& play, const std::vector<double>& ps)
{
  std::vector<double> out;
  for (double p : ps) {
    const auto r = tip_position(map, play, p);
    play = r.play;
    out.push_back(r.tip_y);
  }
  return out;
}

std::vector<double> grid(double lo, double hi, int n)
{
  std::vector<double> v;
  for (int i = 0; i <= n; ++i) v.push_back(lo + (hi - lo) * i / n);
  return v;
}

}  // namespace

TEST(TipMap, AffineWithoutPlay)
{
  const TipMap map{1e-3, 0.0, -1e9, 1e9, 0.0};
  EXPECT_DOUBLE_EQ(tip_position(map, PlayState{}, 50e3).tip_y, 50.0);
}

TEST(TipMap, SaturationClamps)
{
  const TipMap map{1e-3, 2.0, 0.0, 40.0, 0.0};
  EXPECT_DOUBLE_EQ(tip_position(map, PlayState{}, 100e3).tip_y, 40.0);
  EXPECT_DOUBLE_EQ(tip_position(map, PlayState{}, 0.0).tip_y, 2.0);
}

TEST(TipMap, NoPlayIsSingleValued)
{
  const TipMap map{2e-5, 0.5, 0.0, 1e9, 0.0};
  const auto up_p = grid(0, 250e3, 100);
  std::vector<double> down_p(up_p.rbegin(), up_p.rend());
  PlayState play{};
  const auto up = sweep_outputs(map, play, up_p);
  auto down = sweep_outputs(map, play, down_p);
  std::reverse(down.begin(), down.end());
  EXPECT_EQ(up, down);
}

TEST(TipMap, BranchesSeparatedByTwiceThePlay)
{
  const double w = 15e3, gain = 2e-5;
  const TipMap map{gain, 0.0, -1e9, 1e9, w};
  const auto up_p = grid(0, 250e3, 250);
  std::vector<double> down_p(up_p.rbegin(), up_p.rend());
  PlayState play = settled_from_above(map, 0.0);
  const auto up = sweep_outputs(map, play, up_p);
  auto down = sweep_outputs(map, play, down_p);
  std::reverse(down.begin(), down.end());
  for (std::size_t i = 0; i < up_p.size(); ++i) {
    const double p = up_p[i];
    if (p > 2 * w && p < 250e3 - 2 * w) {
      EXPECT_NEAR(down[i] - up[i], 2 * gain * w, 1e-12) << "p = " << p;
    }
  }
}

TEST(TipMap, ConstantInputHoldsTip)
{
  const TipMap map{2e-5, 0.0, -1e9, 1e9, 10e3};
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> pd(0, 3e5);
  for (int trial = 0; trial < 100; ++trial) {
    PlayState play{pd(rng)};
    const double p = pd(rng);
    auto first = tip_position(map, play, p);
    play = first.play;
    for (int i = 0; i < 10; ++i) {
      const auto again = tip_position(map, play, p);
      EXPECT_EQ(again.tip_y, first.tip_y);
      play = again.play;
    }
  }
}

TEST(TipMap, PlayOffsetBoundedAndStaticMapMonotone)
{
  const TipMap map{2e-5, 0.3, 0.0, 4.0, 12e3};
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> pd(0, 3e5);
  PlayState play = settled_from_above(map, 0.0);
  for (int i = 0; i < 5000; ++i) {
    const double p = pd(rng);
    play = tip_position(map, play, p).play;
    ASSERT_LE(std::abs(play.offset_from(p)), map.play_width + 1e-9);
  }
  double prev = -1e9;
  for (double y : grid(-2e4, 4e5, 400)) {
    const double tip = static_tip(map, y);
    EXPECT_GE(tip, prev);
    prev = tip;
  }
}

TEST(TipMap, RejectsNegativePressure)
{
  EXPECT_THROW(tip_position(TipMap{}, PlayState{}, -1.0), std::invalid_argument);
}
