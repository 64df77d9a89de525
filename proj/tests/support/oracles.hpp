#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "porohyst/scenario.hpp"

namespace porohyst::testing {

/// Brute-force play update: scans candidates on a grid of [u - r, u + r]
/// together with xi_prev and returns the candidate satisfying
///   (xi - xi_prev)(u - xi - z) >= 0 for every z on a grid of [-r, r]
/// with the smallest violation. Throws OracleFailure if none is admissible
/// within the grid resolution.
double play_step_oracle(double xi_prev, double u, double r, std::size_t z_grid_size);

/// Grid spacing of the oracle's candidate set.
inline double play_oracle_resolution(double r, std::size_t z_grid_size) {
  return 2.0 * r / static_cast<double>(z_grid_size - 1);
}

/// Bisection root of an increasing scalar function on [lo, hi].
double bisect(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-14);

/// Weak-form residual of one 1D step assembled independently of the
/// library: adaptive Gauss quadrature over each element of the
/// piecewise-linear interpolant, lumped storage terms, kappa evaluated at
/// the element-average saturation given by `theta_trial`.
std::vector<double> weak_form_residual_1d(const Problem& problem, const std::vector<double>& u,
                                          const std::vector<double>& theta_trial, const std::vector<double>& theta_prev,
                                          const std::vector<double>& v_prev, double tau, double t_next);

/// Midpoint-rule integral of psi(r, lambda(r)) dr with `samples` intervals on [0, Lambda]
/// for the monotone input path 0 -> u from virgin memory.
double preisach_monotone_reference(const PreisachDensity& density, double u, double Lambda, std::size_t samples);

}  // namespace porohyst::testing
