#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "porohyst/errors.hpp"
#include "porohyst/play.hpp"

using porohyst::discrete_play_step;
using porohyst::testing::play_oracle_resolution;
using porohyst::testing::play_step_oracle;

TEST(DiscretePlay, ClampsIntoDeadBand) {
  EXPECT_EQ(discrete_play_step(0.0, 2.0, 1.0), 1.0);
  EXPECT_EQ(discrete_play_step(0.0, 0.5, 1.0), 0.0);
  EXPECT_EQ(discrete_play_step(2.0, 0.0, 1.0), 1.0);
  EXPECT_EQ(discrete_play_step(porohyst::PlayUpdate{0.0, 2.0, 1.0}), 1.0);
}

TEST(DiscretePlay, RejectsNonPositiveThreshold) {
  EXPECT_THROW(discrete_play_step(0.0, 1.0, 0.0), porohyst::InvalidThreshold);
  EXPECT_THROW(discrete_play_step(0.0, 1.0, -0.5), porohyst::InvalidThreshold);
}

TEST(PlayOracle, ReproducesHandExamples) {
  const double h = play_oracle_resolution(1.0, 101);
  EXPECT_NEAR(play_step_oracle(0.0, 2.0, 1.0, 101), 1.0, h);
  EXPECT_NEAR(play_step_oracle(0.0, 0.5, 1.0, 101), 0.0, h);
  EXPECT_NEAR(play_step_oracle(2.0, 0.0, 1.0, 101), 1.0, h);
  EXPECT_THROW(play_step_oracle(0.0, 0.0, 1.0, 2), std::invalid_argument);
}

TEST(DiscretePlay, AgreesWithVariationalOracle) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> value(-3.0, 3.0);
  std::uniform_real_distribution<double> threshold(0.01, 2.0);
  for (int i = 0; i < 10000; ++i) {
    const double xi = value(rng);
    const double u = value(rng);
    const double r = threshold(rng);
    ASSERT_NEAR(discrete_play_step(xi, u, r), play_step_oracle(xi, u, r, 101), play_oracle_resolution(r, 101));
  }
}

TEST(DiscretePlay, SatisfiesVariationalInequality) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> value(-3.0, 3.0);
  std::uniform_real_distribution<double> threshold(0.01, 2.0);
  for (int i = 0; i < 2000; ++i) {
    const double xi_prev = value(rng);
    const double u = value(rng);
    const double r = threshold(rng);
    const double xi = discrete_play_step(xi_prev, u, r);
    ASSERT_LE(std::abs(u - xi), r + 1e-12);
    for (double z : {-r, -0.5 * r, 0.0, 0.5 * r, r}) ASSERT_GE((xi - xi_prev) * (u - xi - z), -1e-12);
  }
}

TEST(DiscretePlay, IsNonExpansiveInInputAndState) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> value(-3.0, 3.0);
  std::uniform_real_distribution<double> threshold(0.01, 2.0);
  for (int i = 0; i < 5000; ++i) {
    const double xi = value(rng), xi2 = value(rng), u = value(rng), u2 = value(rng), r = threshold(rng);
    ASSERT_LE(std::abs(discrete_play_step(xi, u, r) - discrete_play_step(xi, u2, r)), std::abs(u - u2) + 1e-15);
    ASSERT_LE(std::abs(discrete_play_step(xi, u, r) - discrete_play_step(xi2, u, r)), std::abs(xi - xi2) + 1e-15);
  }
}
