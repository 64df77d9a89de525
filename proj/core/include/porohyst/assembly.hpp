#pragma once

#include <Eigen/SparseCore>
#include <vector>

#include "porohyst/field.hpp"
#include "porohyst/memory_state.hpp"
#include "porohyst/scenario.hpp"

namespace porohyst {

/// Data of one implicit step i: the committed state of step i-1 and the
/// time level t_i = t_{i-1} + tau at which u* is evaluated.
struct StepInputs {
  const MemoryState& memory_prev;
  const Field& theta_prev;
  const Field& v_prev;
  double tau;
  double t_next;
};

/// Saturation G_i(x, u) at every node for trial pressure u, without
/// committing memory.
Field trial_saturation(const Problem& problem, const MemoryState& memory_prev, const Field& u);

/// Nodal residual of the per-step elliptic problem (v eliminated):
///   M [(G_i(u) - theta_prev) / tau + (u - v_prev) / (1 + tau)]
///   + int kappa(x, theta_e) (grad u + nu) . grad y + sum_bdry b* (u - u*) y
/// where theta_e is the element average of the nodal trial saturation.
/// Throws InvalidScenario when u is not finite.
Field assemble_residual(const Problem& problem, const Field& u, const StepInputs& step);

/// Residual split by term, for diagnostics and tests.
struct ResidualParts {
  Field storage;    // M (G_i(u) - theta_prev) / tau
  Field viscous;    // M (u - v_prev) / (1 + tau)
  Field diffusion;  // kappa grad u . grad y
  Field gravity;    // kappa nu . grad y
  Field boundary;   // b* (u - u*) meas
};
ResidualParts assemble_residual_parts(const Problem& problem, const Field& u, const StepInputs& step);

/// Newton matrix: lumped storage with the hysteresis slope dG_i/du from a
/// centered difference of step `fd_step` (floored at 0), plus the stiffness
/// with kappa frozen at the trial saturation, plus the Robin diagonal.
/// Symmetric; positive definite whenever kappa > 0.
Eigen::SparseMatrix<double> assemble_jacobian(const Problem& problem, const Field& u, const StepInputs& step);

/// Same matrix with a prescribed nodal storage slope instead of the
/// finite-difference one (used by the fixed-point fallback).
Eigen::SparseMatrix<double> assemble_jacobian_with_slope(const Problem& problem, const Field& u,
                                                         const StepInputs& step, const std::vector<double>& slope);

/// Finite-difference slope of u -> G_i(x, u) per node, floored at 0.
std::vector<double> hysteresis_slopes(const Problem& problem, const MemoryState& memory_prev, const Field& u,
                                      double fd_step);

struct BoundaryFluxEntry {
  std::size_t node;
  Side side;
  double measure;
  double flux;  // b* (u - u*(t)), per unit boundary measure
};

/// Robin exchange b*(u - u*(t)) at each boundary facet with its measure.
std::vector<BoundaryFluxEntry> boundary_flux(const Problem& problem, const Field& u, double t);

/// Total outflow sum_facets b* (u - u*(t)) meas.
double boundary_outflow(const Problem& problem, const Field& u, double t);

}  // namespace porohyst
