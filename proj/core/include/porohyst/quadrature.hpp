#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace porohyst {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

const GaussRule& gauss_legendre(std::size_t order);

/// Composite Gauss-Legendre over [a, b] with `panels` equal panels.
template <typename F>
double integrate(F&& f, double a, double b, std::size_t panels = 4, std::size_t order = 8) {
  const GaussRule& rule = gauss_legendre(order);
  const double h = (b - a) / static_cast<double>(panels);
  double sum = 0.0;
  for (std::size_t p = 0; p < panels; ++p) {
    const double lo = a + static_cast<double>(p) * h;
    const double mid = lo + 0.5 * h;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      sum += rule.weights[q] * f(mid + 0.5 * h * rule.nodes[q]);
    }
  }
  return 0.5 * h * sum;
}

/// Adaptive bisection of [a, b] until one 8-point panel and its two halves
/// agree within `tol` (absolute, scaled by max(1, |integral|)).
template <typename F>
double integrate_adaptive(F&& f, double a, double b, double tol = 1e-14, int depth = 40) {
  const double whole = integrate(f, a, b, 1, 8);
  const double mid = 0.5 * (a + b);
  const double halves = integrate(f, a, mid, 1, 8) + integrate(f, mid, b, 1, 8);
  if (depth <= 0 || std::abs(halves - whole) <= tol * std::max(1.0, std::abs(halves))) return halves;
  return integrate_adaptive(f, a, mid, tol, depth - 1) + integrate_adaptive(f, mid, b, tol, depth - 1);
}

/// Composite rule over [a, b] split additionally at the given breakpoints.
template <typename F>
double integrate_split(F&& f, double a, double b, std::span<const double> breaks,
                       std::size_t panels = 2, std::size_t order = 8) {
  const double sign = b >= a ? 1.0 : -1.0;
  const double lo = std::min(a, b);
  const double hi = std::max(a, b);
  std::vector<double> cuts{lo};
  for (double x : breaks) {
    if (x > lo && x < hi) cuts.push_back(x);
  }
  cuts.push_back(hi);
  std::sort(cuts.begin(), cuts.end());
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] > cuts[i]) sum += integrate(f, cuts[i], cuts[i + 1], panels, order);
  }
  return sign * sum;
}

}  // namespace porohyst
