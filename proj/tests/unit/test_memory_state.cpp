#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "oracles.hpp"
#include "porohyst/errors.hpp"
#include "porohyst/memory_state.hpp"
#include "porohyst/play.hpp"

using namespace porohyst;

TEST(UpdateMemory, FixedPointIsUnchanged) {
  const ThresholdGrid grid(1.0, 8);
  const MemoryState state(5, 8, 0.0);
  EXPECT_EQ(update_memory(state, Field(5, 0.0), grid), state);
}

TEST(UpdateMemory, LargeInputActivatesEveryThreshold) {
  const ThresholdGrid grid(1.0, 16);
  const double c = 1.7;
  const MemoryState next = update_memory(MemoryState(3, 16, 0.0), Field(3, c), grid);
  for (std::size_t n = 0; n < 3; ++n) {
    for (std::size_t k = 0; k < 16; ++k) EXPECT_DOUBLE_EQ(next.at(n, k), c - grid.node(k));
  }
}

TEST(UpdateMemory, MatchesOracleEntrywiseAndIsRateIndependent) {
  const ThresholdGrid grid(1.5, 12);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  MemoryState state(7, 12);
  for (std::size_t n = 0; n < 7; ++n) {
    for (std::size_t k = 0; k < 12; ++k) state.at(n, k) = dist(rng);
  }
  Field u(7);
  for (double& x : u) x = dist(rng);
  const MemoryState once = update_memory(state, u, grid);
  for (std::size_t n = 0; n < 7; ++n) {
    for (std::size_t k = 0; k < 12; ++k) {
      const double r = grid.node(k);
      EXPECT_NEAR(once.at(n, k), porohyst::testing::play_step_oracle(state.at(n, k), u[n], r, 101),
                  porohyst::testing::play_oracle_resolution(r, 101));
      EXPECT_LE(std::abs(u[n] - once.at(n, k)), r + 1e-12);
    }
  }
  EXPECT_EQ(update_memory(once, u, grid), once);
}

TEST(UpdateMemory, RejectsShapeMismatch) {
  const ThresholdGrid grid(1.0, 4);
  EXPECT_THROW(update_memory(MemoryState(3, 4), Field(2), grid), DimensionMismatch);
  EXPECT_THROW(update_memory(MemoryState(3, 5), Field(3), grid), DimensionMismatch);
}

TEST(MemorySerialization, BinaryRoundTripIsExact) {
  MemoryState state(4, 6);
  for (std::size_t n = 0; n < 4; ++n) {
    for (std::size_t k = 0; k < 6; ++k) state.at(n, k) = 0.1 * static_cast<double>(n) - 1.0 / (3.0 + k);
  }
  std::stringstream buffer;
  write_memory_binary(buffer, state);
  EXPECT_EQ(buffer.str().substr(0, 4), "PHMS");
  EXPECT_EQ(buffer.str().size(), 4u + 4u + 8u + 8u + 4u * 6u * 8u);
  EXPECT_EQ(read_memory_binary(buffer), state);
}

TEST(MemorySerialization, CsvRoundTripIsExact) {
  const ThresholdGrid grid(2.0, 5);
  MemoryState state(3, 5);
  for (std::size_t n = 0; n < 3; ++n) {
    for (std::size_t k = 0; k < 5; ++k) state.at(n, k) = std::sin(1.0 + n * 5.0 + k) / 7.0;
  }
  std::stringstream buffer;
  write_memory_csv(buffer, state, grid);
  std::string header;
  std::getline(std::stringstream(buffer.str()), header);
  EXPECT_EQ(header.substr(0, 5), "node,");
  EXPECT_EQ(read_memory_csv(buffer, grid), state);
}

TEST(MemorySerialization, CsvRejectsForeignThresholds) {
  const ThresholdGrid grid(2.0, 5);
  std::stringstream buffer;
  write_memory_csv(buffer, MemoryState(2, 5), grid);
  EXPECT_ANY_THROW(read_memory_csv(buffer, ThresholdGrid(1.0, 5)));
}
