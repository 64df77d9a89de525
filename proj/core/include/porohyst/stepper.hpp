#pragma once

#include <functional>
#include <vector>

#include "porohyst/diagnostics.hpp"
#include "porohyst/simulation_state.hpp"

namespace porohyst {

/// Max over nodes of |R_n| / M_n: the residual per unit lumped mass. A step
/// converged to this norm below tol changes the total mass by at most
/// tau tol |Omega| beyond the boundary exchange. On fine meshes round-off
/// bounds this norm from below; Newton then stops on a negligible correction.
double residual_norm(const Problem& problem, const Field& residual);

/// One implicit step of length config.tau from `prev`:
///   solve R(u_i) = 0 by damped Newton from u_{i-1}, falling back to a
///   fixed-point iteration with the storage slope frozen at its Lipschitz
///   bound; then v_i = (v_{i-1} + tau u_i) / (1 + tau), commit the memory and
///   recompute theta_i from it.
/// Throws StepFailure when neither converges. With config.retry_halving the
/// step is retried as two half steps (recursively, up to max_halvings).
SimulationState solve_step(const Problem& problem, const SimulationState& prev, const StepperConfig& config,
                           StepStats* stats = nullptr);

struct RunOptions {
  bool keep_trajectory = false;
  // Called after every committed step, in order.
  std::function<void(const SimulationState&, const StepReport&)> on_step;
};

struct RunResult {
  SimulationState final_state;
  std::vector<StepReport> reports;
  std::vector<Field> u_trajectory;  // u_0 .. u_n when keep_trajectory
};

/// Steps from `start` (initial state or a restored checkpoint) to n = T / tau
/// with the problem's stepper configuration.
RunResult run(const Problem& problem, const SimulationState& start, const RunOptions& options = {});
RunResult run(const Problem& problem, const RunOptions& options = {});

struct SweepRow {
  double tau;
  std::size_t steps;
  double max_sup_u;
  double bv_log_total;
  double total_dissipation;  // hysteresis + viscous + diffusion, summed over steps
  double l2_distance;        // final u against the run with the smallest tau
};

/// Runs the scenario once per tau (each must divide T) and compares them.
std::vector<SweepRow> tau_sweep(const Scenario& scenario, const std::vector<double>& taus);

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace porohyst
