#pragma once

#include <cstddef>
#include <vector>

#include "porohyst/density.hpp"
#include "porohyst/field.hpp"
#include "porohyst/memory_state.hpp"
#include "porohyst/threshold_grid.hpp"
#include "porohyst/transform.hpp"

namespace porohyst {

/// Preisach output G_bar + m(x) sum_r w_r psi(r, xi^r) at one node of a
/// committed memory state.
double preisach_eval(const MemoryState& state, const PreisachDensity& density, const ThresholdGrid& grid,
                     std::size_t node);

/// Preisach output for play input `input` at every node.
Field preisach_field(const MemoryState& state, const PreisachDensity& density, const ThresholdGrid& grid);

/// Output the operator would produce if the play input at `node` moved to
/// `input_candidate` from the committed state. Does not modify memory; the
/// map candidate -> output is nondecreasing.
double within_step_output(const MemoryState& state_prev, const PreisachDensity& density, const ThresholdGrid& grid,
                          std::size_t node, double input_candidate);

/// Lipschitz bound of within_step_output at `node`: m(x) sum_r w_r sup_v phi(r, v).
double hysteresis_slope_bound(const PreisachDensity& density, const ThresholdGrid& grid, std::size_t node);

/// Hysteresis potential sum_r w_r Psi_g(r, xi^r) at one node, where
/// Psi_g(r, xi) = int_0^xi g^{-1}(v) phi(r, v) dv (plain Psi for identity g).
double hysteresis_potential(const MemoryState& state, const PreisachDensity& density, const ThresholdGrid& grid,
                            std::size_t node, const Transform& g = Transform::identity());

struct PotentialDissipation {
  std::vector<double> delta_potential;  // per node
  std::vector<double> dissipation;      // per node, >= 0
};

/// Splits the saturation work of one step into potential change and
/// dissipation:
///   dV = sum_r w_r (Psi(xi_next) - Psi(xi_prev))
///   D  = sum_r w_r [(psi(xi_next) - psi(xi_prev)) u - (Psi(xi_next) - Psi(xi_prev))]
/// `pressure` is u; the play input is g(u). Throws InternalInconsistency when
/// some D < -1e-12 (it cannot be negative for an admissible step).
PotentialDissipation potential_and_dissipation_step(const MemoryState& state_prev, const MemoryState& state_next,
                                                    const PreisachDensity& density, const ThresholdGrid& grid,
                                                    const Field& pressure,
                                                    const Transform& g = Transform::identity());

}  // namespace porohyst
