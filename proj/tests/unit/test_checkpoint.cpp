#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "porohyst/checkpoint.hpp"
#include "porohyst/errors.hpp"
#include "porohyst/stepper.hpp"
#include "scenarios.hpp"

using namespace porohyst;
namespace pt = porohyst::testing;

TEST(Checkpoint, StreamRoundTripIsExact) {
  const Problem p(pt::plane_scenario());
  SimulationState state = initial_state(p);
  for (int i = 0; i < 3; ++i) state = solve_step(p, state, p.stepper());
  const auto fp = scenario_fingerprint(p.scenario());
  std::stringstream buffer;
  write_checkpoint(buffer, state, fp);
  EXPECT_EQ(buffer.str().substr(0, 4), "PHCK");
  EXPECT_EQ(read_checkpoint(buffer, fp), state);
}

TEST(Checkpoint, RestartIsBitExact) {
  const Problem p(pt::reference_scenario());
  const RunResult full = run(p);
  SimulationState state = initial_state(p);
  for (int i = 0; i < 40; ++i) state = solve_step(p, state, p.stepper());

  const auto path = std::filesystem::temp_directory_path() / "porohyst_restart_test.bin";
  const auto fp = scenario_fingerprint(p.scenario());
  save_checkpoint(path, state, fp);
  const SimulationState restored = load_checkpoint(path, fp);
  std::filesystem::remove(path);
  ASSERT_EQ(restored, state);

  const RunResult rest = run(p, restored);
  EXPECT_EQ(rest.final_state, full.final_state);
  ASSERT_EQ(rest.reports.size(), 60u);
  std::ostringstream a, b;
  for (std::size_t i = 0; i < 60; ++i) {
    write_report_row(a, rest.reports[i]);
    write_report_row(b, full.reports[40 + i]);
  }
  EXPECT_EQ(a.str(), b.str());
}

TEST(Checkpoint, RejectsForeignScenarioAndGarbage) {
  const Scenario s = pt::reference_scenario();
  Scenario other = s;
  other.kappa.kappa0 = 0.25;
  EXPECT_NE(scenario_fingerprint(s), scenario_fingerprint(other));
  EXPECT_EQ(scenario_fingerprint(s), scenario_fingerprint(pt::reference_scenario()));

  const Problem p(s);
  std::stringstream buffer;
  write_checkpoint(buffer, initial_state(p), scenario_fingerprint(s));
  EXPECT_THROW(read_checkpoint(buffer, scenario_fingerprint(other)), InvalidScenario);

  std::stringstream garbage("not a checkpoint at all");
  EXPECT_THROW(read_checkpoint(garbage, scenario_fingerprint(s)), InvalidScenario);
  EXPECT_THROW(load_checkpoint("/nonexistent/porohyst.bin", 0), InvalidScenario);
}
