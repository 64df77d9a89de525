#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "porohyst/assembly.hpp"
#include "porohyst/errors.hpp"
#include "porohyst/preisach.hpp"
#include "porohyst/stepper.hpp"
#include "scenarios.hpp"

using namespace porohyst;
namespace pt = porohyst::testing;

namespace {

double sup_distance(const Field& u, double c) {
  double d = 0.0;
  for (double x : u) d = std::max(d, std::abs(x - c));
  return d;
}

Scenario relaxation_scenario(double tau) {
  Scenario s;
  s.mesh = {1, {1.0}, {21}};
  s.Lambda = 2.0;
  s.density.kind = DecayDensity{4.0, 0.5};
  s.density.range_condition = true;
  s.kappa = {0.5, 1.0, 1.0, 1.0, {}};
  s.boundary.bstar = {2.0, 1.0, 0.0, 0.0};
  s.boundary.ustar = {ExteriorPressureSpec::Kind::constant, 0.4, {}, {}};
  s.u0 = {InitialFieldSpec::Kind::linear, -0.5, {0.6}, {}};
  s.v0 = {InitialFieldSpec::Kind::constant, 0.0, {}, {}};
  s.stepper.T = 4.0;
  s.stepper.tau = tau;
  return s;
}

}  // namespace

TEST(Stepper, ConstantStateOfLinearProblemIsSteady) {
  Scenario s;
  s.mesh = {1, {1.0}, {9}};
  s.density.kind = UniformBoxDensity{0.0, 1.0, -1.0, 1.0, 0.0};
  s.u0 = {InitialFieldSpec::Kind::constant, 0.35, {}, {}};
  s.v0 = s.u0;
  s.stepper.T = 0.1;
  const Problem p(s);
  const RunResult r = run(p);
  ASSERT_EQ(r.reports.size(), 10u);
  for (double x : r.final_state.u) EXPECT_NEAR(x, 0.35, 1e-14);
  for (double x : r.final_state.v) EXPECT_NEAR(x, 0.35, 1e-14);
  for (const auto& rep : r.reports) EXPECT_EQ(rep.bv_log_increment, 0.0);
}

TEST(Stepper, RelaxesToExteriorPressure) {
  const Problem p(relaxation_scenario(0.05));
  const RunResult r = run(p, RunOptions{true, {}});
  const std::size_t n = r.u_trajectory.size() - 1;
  const double mid = sup_distance(r.u_trajectory[n / 2], 0.4);
  const double end = sup_distance(r.u_trajectory[n], 0.4);
  EXPECT_LT(end, mid);
  EXPECT_LT(end, 0.5 * sup_distance(r.u_trajectory[0], 0.4));
  EXPECT_LT(sup_distance(r.final_state.v, 0.4), sup_distance(p.v0(), 0.4));

  // The coarse run tracks a four times finer one.
  const RunResult fine = run(Problem(relaxation_scenario(0.0125)));
  double gap = 0.0;
  for (std::size_t i = 0; i < r.final_state.u.size(); ++i) {
    gap = std::max(gap, std::abs(r.final_state.u[i] - fine.final_state.u[i]));
  }
  EXPECT_LT(gap, 0.1 * sup_distance(r.u_trajectory[0], 0.4));
}

TEST(Stepper, TwoNodeStepMatchesScalarBisection) {
  // Two nodes on [0, 2]: lumped mass 1 per node, unit Robin measure per end,
  // and symmetric data keep u spatially constant.
  Scenario s;
  s.mesh = {1, {2.0}, {2}};
  s.Lambda = 2.0;
  s.thresholds = 128;
  s.density.kind = DecayDensity{3.0, 0.4};
  s.kappa = {0.5, 2.0, 1.0, 1.0, {}};
  s.boundary.bstar = {1.5, 1.5, 0.0, 0.0};
  s.boundary.ustar = {ExteriorPressureSpec::Kind::constant, 0.9, {}, {}};
  s.u0 = {InitialFieldSpec::Kind::constant, -0.2, {}, {}};
  s.v0 = {InitialFieldSpec::Kind::constant, 0.1, {}, {}};
  s.stepper.tau = 0.1;
  s.stepper.newton_tol = 1e-13;
  const Problem p(s);
  const SimulationState st = initial_state(p);
  const double tau = 0.1;
  auto f = [&](double u) {
    const double g = within_step_output(st.memory, p.density(), p.grid(), 0, u);
    return (g - st.theta[0]) / tau + (u - 0.1) / (1.0 + tau) + 1.5 * (u - 0.9);
  };
  const double root = pt::bisect(f, -2.0, 2.0);
  StepStats stats;
  const SimulationState next = solve_step(p, st, p.stepper(), &stats);
  EXPECT_NEAR(next.u[0], root, 1e-10);
  EXPECT_NEAR(next.u[1], root, 1e-10);
  EXPECT_LE(stats.residual_norm, 1e-13);
  EXPECT_GE(stats.newton_iterations, 1u);
}

TEST(Stepper, ViscousRecursionAndThetaConsistency) {
  const Problem p(pt::reference_scenario());
  const double tau = p.stepper().tau;
  SimulationState prev = initial_state(p);
  for (int i = 0; i < 5; ++i) {
    StepStats stats;
    const SimulationState next = solve_step(p, prev, p.stepper(), &stats);
    EXPECT_EQ(next.step, prev.step + 1);
    EXPECT_DOUBLE_EQ(next.time, static_cast<double>(next.step) * tau);
    EXPECT_LE(stats.residual_norm, p.stepper().newton_tol);
    for (std::size_t n = 0; n < next.u.size(); ++n) {
      EXPECT_NEAR(next.v[n] - prev.v[n], tau * (next.u[n] - next.v[n]), 1e-15);
      EXPECT_EQ(next.theta[n], preisach_eval(next.memory, p.density(), p.grid(), n));
      for (std::size_t k = 0; k < p.grid().size(); ++k) {
        EXPECT_LE(std::abs(next.u[n] - next.memory.at(n, k)), p.grid().node(k) + 1e-14);
      }
    }
    prev = next;
  }
}

TEST(Stepper, ClosedSystemConservesMass) {
  for (const Scenario& base : {pt::closed_gravity_scenario(), pt::closed_gravity_free_scenario()}) {
    const Problem p(base);
    const RunResult r = run(p);
    ASSERT_EQ(r.reports.size(), 100u);
    const double bound = p.stepper().tau * p.stepper().newton_tol * p.mesh().total_measure();
    for (const auto& rep : r.reports) {
      EXPECT_EQ(rep.boundary_outflow, 0.0);
      EXPECT_LE(std::abs(rep.mass_drift), bound + 1e-14);
    }
  }
}

TEST(Stepper, RunsAreDeterministic) {
  const Problem p(pt::plane_scenario());
  const RunResult a = run(p);
  const RunResult b = run(p);
  EXPECT_EQ(a.final_state, b.final_state);
  std::ostringstream ca, cb;
  for (const auto& rep : a.reports) write_report_row(ca, rep);
  for (const auto& rep : b.reports) write_report_row(cb, rep);
  EXPECT_EQ(ca.str(), cb.str());
}

TEST(Stepper, RestartFromIntermediateStateReproducesRun) {
  const Problem p(pt::reference_scenario());
  const RunResult full = run(p, RunOptions{true, {}});
  SimulationState state = initial_state(p);
  for (int i = 0; i < 37; ++i) state = solve_step(p, state, p.stepper());
  const RunResult rest = run(p, state);
  EXPECT_EQ(rest.reports.size(), 63u);
  EXPECT_EQ(rest.final_state, full.final_state);
}

TEST(Stepper, FailureWithoutFallbackAndHalvingRetry) {
  Scenario s = relaxation_scenario(0.5);
  s.boundary.bstar = {50.0, 50.0, 0.0, 0.0};
  s.boundary.ustar.value = -0.9;
  s.u0 = {InitialFieldSpec::Kind::constant, 0.9, {}, {}};
  s.v0 = s.u0;
  s.density.kind = DecayDensity{4.0, 0.5};
  s.stepper.newton_max_iter = 1;
  s.stepper.picard_fallback = false;
  const Problem strict(s);
  try {
    solve_step(strict, initial_state(strict), strict.stepper());
    FAIL() << "step converged in a single Newton iteration";
  } catch (const StepFailure& e) {
    EXPECT_EQ(e.step(), 1u);
    EXPECT_GT(e.residual(), s.stepper.newton_tol);
  }

  s.stepper.newton_max_iter = 50;
  s.stepper.picard_fallback = true;
  const Problem fallback(s);
  StepStats stats;
  const SimulationState next = solve_step(fallback, initial_state(fallback), fallback.stepper(), &stats);
  EXPECT_LE(stats.residual_norm, s.stepper.newton_tol);
  EXPECT_EQ(next.step, 1u);
}

TEST(Stepper, HalvingRetryRecoversAFailedStep) {
  // Steep kappa(theta) and a far-from-equilibrium start: eight Newton
  // iterations are not enough at tau = 0.01 but suffice for each half step.
  Scenario s;
  s.mesh = {1, {1.0}, {21}};
  s.Lambda = 2.0;
  s.density.kind = DecayDensity{4.0, 0.5};
  s.kappa = {0.5, 2.0, 3.0, 1.0, {}};
  s.gravity = {true, {1.0}};
  s.boundary.bstar = {0.5, 0.0, 0.0, 0.0};
  s.boundary.ustar = {ExteriorPressureSpec::Kind::constant, 0.95, {}, {}};
  s.u0 = {InitialFieldSpec::Kind::linear, -0.95, {0.8}, {}};
  s.v0 = s.u0;
  s.stepper.tau = 0.01;
  s.stepper.newton_max_iter = 8;
  s.stepper.picard_fallback = false;
  const Problem no_retry(s);
  EXPECT_THROW(solve_step(no_retry, initial_state(no_retry), no_retry.stepper()), StepFailure);

  s.stepper.retry_halving = true;
  const Problem p(s);
  StepStats stats;
  const SimulationState next = solve_step(p, initial_state(p), p.stepper(), &stats);
  EXPECT_EQ(stats.halvings, 1u);
  EXPECT_EQ(next.step, 1u);
  EXPECT_DOUBLE_EQ(next.time, 0.01);

  // Same as two explicit half steps.
  StepperConfig half = no_retry.stepper();
  half.tau = 0.005;
  const SimulationState a = solve_step(no_retry, initial_state(no_retry), half);
  SimulationState b = solve_step(no_retry, a, half);
  EXPECT_EQ(b.u, next.u);
  EXPECT_EQ(b.v, next.v);
  EXPECT_EQ(b.memory, next.memory);

  // Retries are bounded: with no halving depth left the failure propagates.
  s.stepper.max_halvings = 0;
  const Problem exhausted(s);
  EXPECT_THROW(solve_step(exhausted, initial_state(exhausted), exhausted.stepper()), StepFailure);
}

TEST(Stepper, GravityFreeSupNormStaysWithinData) {
  Scenario s = pt::closed_gravity_free_scenario();
  s.boundary.bstar = {1.0, 0.5, 0.0, 0.0};
  s.boundary.ustar = {ExteriorPressureSpec::Kind::table, 0.0, {0.0, 0.5, 1.0}, {0.2, -0.25, 0.1}};
  const Problem p(s);
  const RunResult r = run(p);
  const double bound = std::max(p.u0().sup_norm(), s.boundary.ustar.sup_abs());
  for (const auto& rep : r.reports) EXPECT_LE(rep.sup_u, bound + 1e-9);
}

TEST(TauSweep, SingleEntryHasZeroDistance) {
  Scenario s = pt::reference_scenario();
  s.stepper.T = 0.1;
  const auto rows = tau_sweep(s, {0.01});
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].steps, 10u);
  EXPECT_EQ(rows[0].l2_distance, 0.0);
  EXPECT_GT(rows[0].bv_log_total, 0.0);
  EXPECT_THROW(tau_sweep(s, {}), InvalidScenario);
}

TEST(TauSweep, LinearProblemConvergesMonotonically) {
  Scenario s = pt::linear_scenario();
  s.stepper.T = 0.5;
  const auto rows = tau_sweep(s, {0.05, 0.025, 0.0125, 0.00625});
  for (std::size_t i = 1; i + 1 < rows.size(); ++i) EXPECT_LT(rows[i].l2_distance, rows[i - 1].l2_distance);
  std::ostringstream csv;
  write_sweep_csv(csv, rows);
  EXPECT_EQ(csv.str().substr(0, csv.str().find('\n')), "tau,steps,max_sup_u,bv_log_total,total_dissipation,l2_distance");
}

TEST(Stepper, ZeroHorizonIsRejected) {
  Scenario s;
  s.stepper.T = 0.0;
  EXPECT_THROW(Problem{s}, InvalidScenario);
}

TEST(Stepper, FineMeshConvergesAtRoundoffFloor) {
  // At 4096 nodes round-off keeps max |R| / M near 3e-9, above the default tolerance.
  Scenario s = pt::closed_gravity_scenario();
  s.mesh = {1, {1.0}, {4096}};
  s.stepper.T = 0.03;
  const Problem p(s);
  const RunResult r = run(p);
  ASSERT_EQ(r.reports.size(), 3u);
  for (const auto& rep : r.reports) {
    EXPECT_LT(rep.residual_norm, 1e-6);
    EXPECT_LE(std::abs(rep.mass_drift), p.stepper().tau * std::max(p.stepper().newton_tol, rep.residual_norm) *
                                             p.mesh().total_measure() + 1e-14);
    EXPECT_TRUE(rep.energy_ok) << "step " << rep.step;
  }
}

TEST(Stepper, FailureMessageKeepsSmallResiduals) {
  const StepFailure failure(3, 2.5e-9, "nonlinear solve did not converge");
  EXPECT_NE(std::string(failure.what()).find("2.500e-09"), std::string::npos);
}
