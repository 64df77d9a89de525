#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "porohyst/simulation_state.hpp"

namespace porohyst {

/// Solver statistics of one step.
struct StepStats {
  std::size_t newton_iterations = 0;
  std::size_t picard_iterations = 0;
  std::size_t halvings = 0;  // depth of tau halving used (0 = nominal step)
  double residual_norm = 0.0;
};

/// Per-step diagnostics. With y = u_i + nu . (x - x0) as test function the
/// converged step satisfies, up to the residual,
///   dE + D_hyst + D_visc + D_diff + boundary_work + gravity_cross
///     = tau <y, R> - sum M |dv|^2 / 2,
/// where E = sum M (V + v^2/2 + theta nu . (x - x0)) and V is the hysteresis
/// potential. energy_residual is the left-hand side and must not exceed
/// energy_budget = tau max(newton_tol, residual_norm) sum M |y| (+ round-off
/// allowance); residual_norm exceeds newton_tol only for steps accepted at the
/// round-off floor.
struct StepReport {
  std::size_t step = 0;
  double time = 0.0;
  double mass = 0.0;              // sum M (theta + v)
  double mass_drift = 0.0;        // mass_i - mass_{i-1} + boundary_outflow
  double boundary_outflow = 0.0;  // tau sum b* (u - u*) meas
  double energy = 0.0;            // E_i
  double delta_potential = 0.0;   // sum M dV
  double dissipation_hyst = 0.0;
  double dissipation_visc = 0.0;  // sum M |dv|^2 / tau
  double dissipation_diff = 0.0;  // tau int kappa |grad u + nu|^2
  double gravity_cross = 0.0;     // sum M dv nu . (x - x0)
  double boundary_work = 0.0;     // tau sum b* (u - u*) (u + nu . (x - x0)) meas
  double energy_residual = 0.0;
  double energy_budget = 0.0;
  bool energy_ok = true;
  double min_node_dissipation = 0.0;  // smallest per-node hysteresis dissipation
  double sup_u = 0.0;
  double sup_v = 0.0;
  double sup_theta = 0.0;
  double bv_log_increment = 0.0;  // sum M |du| log(1 + |du| / tau)
  std::size_t newton_iterations = 0;
  std::size_t picard_iterations = 0;
  std::size_t halvings = 0;
  double residual_norm = 0.0;
};

struct MassBalance {
  double mass_next;
  double drift;
  double boundary_outflow;
};

double total_mass(const Problem& problem, const SimulationState& state);
MassBalance mass_balance(const Problem& problem, const SimulationState& prev, const SimulationState& next, double tau);

/// E = sum M (V + v^2/2 + theta nu . (x - x0)).
double total_energy(const Problem& problem, const SimulationState& state);

/// Energy and dissipation fields of the report for the step prev -> next.
/// Throws InternalInconsistency if some node dissipates negatively.
void energy_report(const Problem& problem, const SimulationState& prev, const SimulationState& next, double tau,
                   StepReport& report);

double bv_log_increment(const Problem& problem, const Field& u_prev, const Field& u_next, double tau);
/// Sum over consecutive pairs of a trajectory u_0, u_1, ..., u_n.
double bv_log_total(const Problem& problem, std::span<const Field> trajectory, double tau);

struct SupNorms {
  double u = 0.0;
  double v = 0.0;
  double theta = 0.0;
};
SupNorms sup_norm_monitor(const SimulationState& initial, std::span<const StepReport> reports);

/// Complete report for one committed step.
StepReport make_step_report(const Problem& problem, const SimulationState& prev, const SimulationState& next,
                            double tau, const StepStats& stats);

/// StepReport CSV, one row per step, 17 significant digits. Columns:
/// step,time,mass,mass_drift,boundary_outflow,energy,delta_potential,
/// dissipation_hyst,dissipation_visc,dissipation_diff,gravity_cross,
/// boundary_work,energy_residual,energy_budget,energy_ok,
/// min_node_dissipation,sup_u,sup_v,sup_theta,bv_log_increment,
/// newton_iterations,picard_iterations,halvings,residual_norm
void write_report_header(std::ostream& out);
void write_report_row(std::ostream& out, const StepReport& report);

/// Field snapshot CSV: node,x[,y],u,v,theta.
void write_snapshot(std::ostream& out, const Problem& problem, const SimulationState& state);

}  // namespace porohyst
