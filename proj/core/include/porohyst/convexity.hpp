#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace porohyst {

/// v-independent Preisach density phi(r) > 0 on (0, radius], zero beyond.
struct PrandtlIshlinskiiDensity {
  std::function<double(double)> phi;
  double radius = 1.0;
  std::vector<double> breakpoints;  // kinks of phi in r

  static PrandtlIshlinskiiDensity constant(double height, double radius);
  // phi0 * max(1, r)^(-m)
  static PrandtlIshlinskiiDensity decay(double phi0, double m, double radius);
};

/// Exact play memory xi(r) on [0, radius] as a piecewise-linear curve.
///
/// Every play update clamps the curve between the lines w - r and w + r,
/// which keeps it piecewise linear; breakpoints are inserted where the
/// curve crosses either line, so no threshold discretization is involved.
class MemoryCurve {
 public:
  // Memory left by a monotone path from 0 to `input`.
  MemoryCurve(double input, double radius);

  void apply(double input);
  double at(double r) const;
  double radius() const noexcept { return r_.back(); }
  std::span<const double> knots() const noexcept { return r_; }
  std::span<const double> values() const noexcept { return xi_; }

  /// int_0^radius phi(r) xi(r) dr.
  double output(const PrandtlIshlinskiiDensity& density) const;

 private:
  void simplify();

  std::vector<double> r_;
  std::vector<double> xi_;
};

/// Odd increasing f with f(0) = 0 together with
///   F(w) = int_0^w f,   Gamma(w) = |w| (w f(w) - F(w)).
struct FluxFunction {
  std::function<double(double)> f;
  std::function<double(double)> F;
  std::function<double(double)> Gamma;

  /// f(w) = w / (tau + |w|) with the closed forms
  ///   F(w) = |w| - tau log(1 + |w|/tau),
  ///   Gamma(w) = tau |w| (log(1 + |w|/tau) - |w|/(tau + |w|)).
  static FluxFunction log_regularized(double tau);
  /// F and Gamma by adaptive Gauss-Legendre quadrature of an arbitrary odd increasing f.
  static FluxFunction from_function(std::function<double(double)> f);
};

struct ConvexityCheck {
  double lhs = 0.0;        // second-difference sum plus the initial-slope term
  double gamma_sum = 0.0;  // sum_i Gamma(w_{i+1} - w_i)
  double rhs = 0.0;        // beta/2 * gamma_sum
  double initial_slope = 0.0;
  bool holds = true;
};

/// Evaluates both sides of
///   sum_{i=0}^{N-1} (P_{i+1} - 2 P_i + P_{i-1}) f(w_{i+1} - w_i)
///     + (P_0 - P_{-1}) / (w_0 - w_{-1}) F(w_0 - w_{-1})
///   >= beta/2 sum_{i=0}^{N-1} Gamma(w_{i+1} - w_i)
/// for `sequence` = (w_{-1}, w_0, ..., w_N). The operator starts from the
/// memory of a monotone path 0 -> w_{-1}. When w_0 == w_{-1} the difference
/// quotient is replaced by the branch slope in the direction of the first
/// nonzero move (ascending: right derivative, descending: left derivative).
ConvexityCheck check_convexity_inequality(const PrandtlIshlinskiiDensity& density, std::span<const double> sequence,
                                          const FluxFunction& flux, double beta);

/// 2 * lhs / gamma_sum, the largest beta for which the sequence satisfies the
/// inequality (+inf when gamma_sum == 0 and lhs >= 0).
double convexity_ratio(const PrandtlIshlinskiiDensity& density, std::span<const double> sequence,
                       const FluxFunction& flux);

struct BetaDerivation {
  double beta = 0.0;
  std::size_t sequences = 0;             // sequences with a nonzero Gamma sum
  std::array<double, 3> worst{};         // (w_{-1}, w_0, w_1) attaining beta
};

/// Brute-force beta: the smallest convexity_ratio over all two-step
/// sequences (w_{-1}, w_0, w_1) on a uniform grid of [-U, U]^3 with
/// `points` values per axis.
BetaDerivation derive_beta_two_step(const PrandtlIshlinskiiDensity& density, const FluxFunction& flux, double U,
                                    std::size_t points);

}  // namespace porohyst
