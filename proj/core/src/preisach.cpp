#include "porohyst/preisach.hpp"

#include <cmath>
#include <string>

#include "porohyst/errors.hpp"
#include "porohyst/play.hpp"
#include "porohyst/quadrature.hpp"

namespace porohyst {

namespace {

void check_node(const MemoryState& state, const ThresholdGrid& grid, std::size_t node) {
  if (state.thresholds() != grid.size() || node >= state.nodes()) {
    throw DimensionMismatch("preisach: node " + std::to_string(node) + " or threshold count out of range");
  }
}

// int_a^b g^{-1}(v) phi(r, v) dv.
double transformed_moment(const PreisachDensity& density, const Transform& g, double r, double a, double b) {
  if (a == b) return 0.0;
  std::vector<double> breaks = density.v_breakpoints(r);
  const auto extra = g.inverse_breakpoints();
  breaks.insert(breaks.end(), extra.begin(), extra.end());
  breaks.push_back(0.0);
  return integrate_split([&](double v) { return g.inverse(v) * density.phi(r, v); }, a, b, breaks, 2, 8);
}

}  // namespace

double preisach_eval(const MemoryState& state, const PreisachDensity& density, const ThresholdGrid& grid,
                     std::size_t node) {
  check_node(state, grid, node);
  const auto xi = state.row(node);
  double sum = 0.0;
  for (std::size_t k = 0; k < xi.size(); ++k) sum += grid.weight(k) * density.psi(grid.node(k), xi[k]);
  return density.g_bar() + density.multiplier(node) * sum;
}

Field preisach_field(const MemoryState& state, const PreisachDensity& density, const ThresholdGrid& grid) {
  Field theta(state.nodes());
  for (std::size_t n = 0; n < state.nodes(); ++n) theta[n] = preisach_eval(state, density, grid, n);
  return theta;
}

double within_step_output(const MemoryState& state_prev, const PreisachDensity& density, const ThresholdGrid& grid,
                          std::size_t node, double input_candidate) {
  check_node(state_prev, grid, node);
  const auto xi = state_prev.row(node);
  double sum = 0.0;
  for (std::size_t k = 0; k < xi.size(); ++k) {
    const double r = grid.node(k);
    sum += grid.weight(k) * density.psi(r, play_clamp(xi[k], input_candidate, r));
  }
  return density.g_bar() + density.multiplier(node) * sum;
}

double hysteresis_slope_bound(const PreisachDensity& density, const ThresholdGrid& grid, std::size_t node) {
  double sum = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) sum += grid.weight(k) * density.sup_phi(grid.node(k));
  return density.multiplier(node) * sum;
}

double hysteresis_potential(const MemoryState& state, const PreisachDensity& density, const ThresholdGrid& grid,
                            std::size_t node, const Transform& g) {
  check_node(state, grid, node);
  const auto xi = state.row(node);
  double sum = 0.0;
  for (std::size_t k = 0; k < xi.size(); ++k) {
    const double r = grid.node(k);
    const double psi2 = g.is_identity() ? density.Psi(r, xi[k]) : transformed_moment(density, g, r, 0.0, xi[k]);
    sum += grid.weight(k) * psi2;
  }
  return density.multiplier(node) * sum;
}

PotentialDissipation potential_and_dissipation_step(const MemoryState& state_prev, const MemoryState& state_next,
                                                    const PreisachDensity& density, const ThresholdGrid& grid,
                                                    const Field& pressure, const Transform& g) {
  if (state_prev.nodes() != state_next.nodes() || state_prev.thresholds() != state_next.thresholds() ||
      state_prev.thresholds() != grid.size() || pressure.size() != state_prev.nodes()) {
    throw DimensionMismatch("potential_and_dissipation_step: shape mismatch");
  }
  PotentialDissipation out;
  out.delta_potential.assign(state_prev.nodes(), 0.0);
  out.dissipation.assign(state_prev.nodes(), 0.0);
  for (std::size_t n = 0; n < state_prev.nodes(); ++n) {
    const auto before = state_prev.row(n);
    const auto after = state_next.row(n);
    const double u = pressure[n];
    double dv = 0.0;
    double work = 0.0;
    for (std::size_t k = 0; k < before.size(); ++k) {
      if (before[k] == after[k]) continue;
      const double r = grid.node(k);
      const double w = grid.weight(k);
      const double dpsi = density.psi(r, after[k]) - density.psi(r, before[k]);
      const double dPsi = g.is_identity() ? density.Psi(r, after[k]) - density.Psi(r, before[k])
                                          : transformed_moment(density, g, r, before[k], after[k]);
      dv += w * dPsi;
      work += w * dpsi * u;
    }
    const double m = density.multiplier(n);
    out.delta_potential[n] = m * dv;
    out.dissipation[n] = m * (work - dv);
    if (out.dissipation[n] < -1e-12) {
      throw InternalInconsistency("negative hysteresis dissipation " + std::to_string(out.dissipation[n]) +
                                  " at node " + std::to_string(n));
    }
  }
  return out;
}

}  // namespace porohyst
