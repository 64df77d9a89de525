#include <gtest/gtest.h>

#include <random>

#include "porohyst/errors.hpp"
#include "porohyst/initial_memory.hpp"

using namespace porohyst;

TEST(VirginMemory, ZeroInputGivesZeroMemory) {
  const ThresholdGrid grid(1.0, 16);
  const auto memory = build_virgin_memory(Field(5, 0.0), grid);
  EXPECT_EQ(memory.lambda, MemoryState(5, 16));
  EXPECT_EQ(memory.Lambda, 1.0);
}

TEST(VirginMemory, ConstantInputIsShiftedRamp) {
  const ThresholdGrid grid(1.0, 20);
  const auto memory = build_virgin_memory(Field(2, 0.5), grid);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    EXPECT_DOUBLE_EQ(memory.lambda.at(1, k), std::max(0.0, 0.5 - grid.node(k)));
  }
  const auto negative = build_virgin_memory(Field(1, -0.5), grid);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    EXPECT_DOUBLE_EQ(negative.lambda.at(0, k), -std::max(0.0, 0.5 - grid.node(k)));
  }
}

TEST(VirginMemory, RejectsInputBeyondLambda) {
  const ThresholdGrid grid(1.0, 8);
  EXPECT_THROW(build_virgin_memory(Field(std::vector<double>{0.2, -1.01}), grid), IncompatibleInitialData);
  EXPECT_NO_THROW(build_virgin_memory(Field(std::vector<double>{1.0, -1.0}), grid));
}

TEST(VirginMemory, RandomInputsSatisfyInvariants) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const double Lambda = std::uniform_real_distribution<double>(0.1, 5.0)(rng);
    const ThresholdGrid grid(Lambda, 1 + trial * 3);
    std::uniform_real_distribution<double> value(-Lambda, Lambda);
    Field w0(17);
    for (double& x : w0) x = value(rng);
    const auto memory = build_virgin_memory(w0, grid);
    const auto report = check_memory_invariants(memory.lambda, grid, w0);
    EXPECT_TRUE(report.ok());
    EXPECT_TRUE(report.messages.empty());
  }
}

TEST(MemoryInvariants, DetectEachViolation) {
  const ThresholdGrid grid(1.0, 4);  // nodes 0.125, 0.375, 0.625, 0.875
  const Field w0(1, 0.0);

  MemoryState detached(1, 4);
  detached.at(0, 0) = 0.2;  // |lambda(r_0) - w0| > r_0
  detached.at(0, 1) = 0.2;
  EXPECT_FALSE(check_memory_invariants(detached, grid, w0).anchored);

  MemoryState steep(1, 4);
  steep.at(0, 1) = 0.3;  // jump 0.3 over dr = 0.25
  const auto steep_report = check_memory_invariants(steep, grid, w0);
  EXPECT_FALSE(steep_report.lipschitz);
  EXPECT_FALSE(steep_report.ok());
  EXPECT_FALSE(steep_report.messages.empty());

  MemoryState unsupported(1, 4);
  unsupported.at(0, 3) = 0.2;  // |lambda| > Lambda - r at the last node
  unsupported.at(0, 2) = 0.2;
  unsupported.at(0, 1) = 0.1;
  EXPECT_FALSE(check_memory_invariants(unsupported, grid, w0).supported);
}
