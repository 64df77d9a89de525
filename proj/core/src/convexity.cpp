#include "porohyst/convexity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "porohyst/errors.hpp"
#include "porohyst/quadrature.hpp"

namespace porohyst {

PrandtlIshlinskiiDensity PrandtlIshlinskiiDensity::constant(double height, double radius) {
  if (!(height > 0.0) || !(radius > 0.0)) throw InvalidScenario("convexity", "PI density must be positive");
  return {[height](double) { return height; }, radius, {}};
}

PrandtlIshlinskiiDensity PrandtlIshlinskiiDensity::decay(double phi0, double m, double radius) {
  if (!(phi0 > 0.0) || !(m > 0.0) || !(radius > 0.0)) {
    throw InvalidScenario("convexity", "PI decay density needs phi0 > 0, m > 0");
  }
  return {[phi0, m](double r) { return phi0 * std::pow(std::max(1.0, r), -m); }, radius, {1.0}};
}

MemoryCurve::MemoryCurve(double input, double radius) {
  if (!(radius > 0.0)) throw InvalidThreshold("memory curve radius must be positive");
  const double a = std::min(std::abs(input), radius);
  r_ = {0.0};
  xi_ = {input};
  if (a > 0.0 && a < radius) {
    r_.push_back(a);
    xi_.push_back(0.0);
  }
  r_.push_back(radius);
  xi_.push_back(input > 0.0 ? std::max(0.0, input - radius) : std::min(0.0, input + radius));
}

double MemoryCurve::at(double r) const {
  if (r <= r_.front()) return xi_.front();
  if (r >= r_.back()) return xi_.back();
  const auto j = static_cast<std::size_t>(std::upper_bound(r_.begin(), r_.end(), r) - r_.begin()) - 1;
  const double s = (r - r_[j]) / (r_[j + 1] - r_[j]);
  return xi_[j] + s * (xi_[j + 1] - xi_[j]);
}

void MemoryCurve::apply(double input) {
  std::vector<double> knots;
  knots.reserve(r_.size() * 3);
  for (std::size_t j = 0; j + 1 < r_.size(); ++j) {
    knots.push_back(r_[j]);
    // Crossings of the segment with the lines input - r and input + r.
    for (double slope : {-1.0, 1.0}) {
      const double fa = xi_[j] - (input + slope * r_[j]);
      const double fb = xi_[j + 1] - (input + slope * r_[j + 1]);
      if ((fa < 0.0 && fb > 0.0) || (fa > 0.0 && fb < 0.0)) {
        const double t = fa / (fa - fb);
        knots.push_back(r_[j] + t * (r_[j + 1] - r_[j]));
      }
    }
  }
  knots.push_back(r_.back());
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());

  std::vector<double> values(knots.size());
  for (std::size_t i = 0; i < knots.size(); ++i) {
    const double r = knots[i];
    values[i] = std::max(input - r, std::min(input + r, at(r)));
  }
  r_ = std::move(knots);
  xi_ = std::move(values);
  simplify();
}

void MemoryCurve::simplify() {
  std::vector<double> r{r_.front()};
  std::vector<double> xi{xi_.front()};
  for (std::size_t j = 1; j + 1 < r_.size(); ++j) {
    const double left = (xi_[j] - xi.back()) / (r_[j] - r.back());
    const double right = (xi_[j + 1] - xi_[j]) / (r_[j + 1] - r_[j]);
    if (std::abs(left - right) > 1e-13 && r_[j] - r.back() > 1e-15) {
      r.push_back(r_[j]);
      xi.push_back(xi_[j]);
    }
  }
  r.push_back(r_.back());
  xi.push_back(xi_.back());
  r_ = std::move(r);
  xi_ = std::move(xi);
}

double MemoryCurve::output(const PrandtlIshlinskiiDensity& density) const {
  const double limit = std::min(density.radius, r_.back());
  double sum = 0.0;
  for (std::size_t j = 0; j + 1 < r_.size() && r_[j] < limit; ++j) {
    const double a = r_[j];
    const double b = std::min(r_[j + 1], limit);
    sum += integrate_split([&](double r) { return density.phi(r) * at(r); }, a, b, density.breakpoints, 1, 4);
  }
  return sum;
}

FluxFunction FluxFunction::log_regularized(double tau) {
  if (!(tau > 0.0)) throw InvalidScenario("convexity.tau", "must be positive");
  FluxFunction flux;
  flux.f = [tau](double w) { return w / (tau + std::abs(w)); };
  flux.F = [tau](double w) {
    const double a = std::abs(w);
    return a - tau * std::log1p(a / tau);
  };
  flux.Gamma = [tau](double w) {
    const double a = std::abs(w);
    return tau * a * (std::log1p(a / tau) - a / (tau + a));
  };
  return flux;
}

FluxFunction FluxFunction::from_function(std::function<double(double)> f) {
  FluxFunction flux;
  flux.f = f;
  flux.F = [f](double w) { return integrate_adaptive(f, 0.0, w); };
  flux.Gamma = [f, F = flux.F](double w) { return std::abs(w) * (w * f(w) - F(w)); };
  return flux;
}

ConvexityCheck check_convexity_inequality(const PrandtlIshlinskiiDensity& density, std::span<const double> sequence,
                                          const FluxFunction& flux, double beta) {
  if (sequence.size() < 2) throw std::invalid_argument("convexity check needs at least w_{-1} and w_0");
  const double radius = std::max(density.radius, 2.0 * *std::max_element(sequence.begin(), sequence.end(),
                                                                          [](double a, double b) {
                                                                            return std::abs(a) < std::abs(b);
                                                                          }) + 1e-12);
  MemoryCurve curve(sequence[0], radius);
  std::vector<double> outputs;
  outputs.reserve(sequence.size());
  outputs.push_back(curve.output(density));
  MemoryCurve before_first = curve;
  for (std::size_t i = 1; i < sequence.size(); ++i) {
    curve.apply(sequence[i]);
    outputs.push_back(curve.output(density));
  }

  ConvexityCheck result;
  const double dw0 = sequence[1] - sequence[0];
  if (dw0 != 0.0) {
    result.initial_slope = (outputs[1] - outputs[0]) / dw0;
  } else {
    // Direction of the first nonzero move selects the branch.
    double direction = 0.0;
    for (std::size_t i = 1; i < sequence.size() && direction == 0.0; ++i) {
      direction = (sequence[i] > sequence[i - 1]) - (sequence[i] < sequence[i - 1]);
    }
    if (direction == 0.0) return result;
    const double h = 1e-7 * std::max(1.0, std::abs(sequence[0]));
    MemoryCurve probe = before_first;
    probe.apply(sequence[0] + direction * h);
    result.initial_slope = (probe.output(density) - outputs[0]) / (direction * h);
  }
  result.lhs = result.initial_slope * flux.F(dw0);

  // outputs[k] holds P_{k-1}.
  for (std::size_t k = 1; k + 1 < sequence.size(); ++k) {
    const double second = outputs[k + 1] - 2.0 * outputs[k] + outputs[k - 1];
    const double step = sequence[k + 1] - sequence[k];
    result.lhs += second * flux.f(step);
    result.gamma_sum += flux.Gamma(step);
  }
  result.rhs = 0.5 * beta * result.gamma_sum;
  result.holds = result.lhs >= result.rhs;
  return result;
}

double convexity_ratio(const PrandtlIshlinskiiDensity& density, std::span<const double> sequence,
                       const FluxFunction& flux) {
  const auto check = check_convexity_inequality(density, sequence, flux, 0.0);
  if (check.gamma_sum == 0.0) {
    return check.lhs >= 0.0 ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
  }
  return 2.0 * check.lhs / check.gamma_sum;
}

BetaDerivation derive_beta_two_step(const PrandtlIshlinskiiDensity& density, const FluxFunction& flux, double U,
                                    std::size_t points) {
  if (points < 2 || !(U > 0.0)) throw std::invalid_argument("derive_beta_two_step: need U > 0 and points >= 2");
  BetaDerivation out;
  out.beta = std::numeric_limits<double>::infinity();
  std::vector<double> axis(points);
  for (std::size_t i = 0; i < points; ++i) {
    axis[i] = -U + 2.0 * U * static_cast<double>(i) / static_cast<double>(points - 1);
  }
  for (double a : axis) {
    for (double b : axis) {
      for (double c : axis) {
        const std::array<double, 3> seq{a, b, c};
        const auto check = check_convexity_inequality(density, seq, flux, 0.0);
        if (check.gamma_sum == 0.0) continue;
        ++out.sequences;
        const double ratio = 2.0 * check.lhs / check.gamma_sum;
        if (ratio < out.beta) {
          out.beta = ratio;
          out.worst = seq;
        }
      }
    }
  }
  return out;
}

}  // namespace porohyst
