#include "porohyst/transform.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "porohyst/errors.hpp"

namespace porohyst {

Transform Transform::polynomial(std::vector<double> coefficients) {
  Transform t;
  t.kind_ = Kind::polynomial;
  t.coeffs_ = std::move(coefficients);
  if (t.coeffs_.empty()) t.coeffs_ = {0.0, 1.0};
  return t;
}

Transform Transform::table(std::vector<double> u, std::vector<double> g) {
  if (u.size() < 2 || u.size() != g.size()) {
    throw InvalidTransform("g table needs matching u and g arrays with at least two points");
  }
  for (std::size_t i = 0; i + 1 < u.size(); ++i) {
    if (!(u[i + 1] > u[i])) throw InvalidTransform("g table abscissae must be strictly increasing");
  }
  Transform t;
  t.kind_ = Kind::table;
  t.u_ = std::move(u);
  t.g_ = std::move(g);
  return t;
}

double Transform::operator()(double u) const {
  switch (kind_) {
    case Kind::identity:
      return u;
    case Kind::polynomial: {
      double acc = 0.0;
      for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * u + *it;
      return acc;
    }
    case Kind::table: {
      // Linear extrapolation with the end slopes outside the table.
      std::size_t j = 0;
      if (u >= u_.back()) {
        j = u_.size() - 2;
      } else if (u > u_.front()) {
        j = static_cast<std::size_t>(std::upper_bound(u_.begin(), u_.end(), u) - u_.begin()) - 1;
      }
      const double s = (u - u_[j]) / (u_[j + 1] - u_[j]);
      return g_[j] + s * (g_[j + 1] - g_[j]);
    }
  }
  return u;
}

double Transform::derivative(double u) const {
  switch (kind_) {
    case Kind::identity:
      return 1.0;
    case Kind::polynomial: {
      double acc = 0.0;
      for (std::size_t k = coeffs_.size(); k-- > 1;) acc = acc * u + static_cast<double>(k) * coeffs_[k];
      return acc;
    }
    case Kind::table: {
      std::size_t j = 0;
      if (u >= u_.back()) {
        j = u_.size() - 2;
      } else if (u > u_.front()) {
        j = static_cast<std::size_t>(std::upper_bound(u_.begin(), u_.end(), u) - u_.begin()) - 1;
      }
      return (g_[j + 1] - g_[j]) / (u_[j + 1] - u_[j]);
    }
  }
  return 1.0;
}

double Transform::inverse(double w) const {
  if (kind_ == Kind::identity) return w;
  // Expand a bracket around w and bisect; g is increasing on its working range.
  double lo = -1.0;
  double hi = 1.0;
  for (int i = 0; i < 200 && (*this)(lo) > w; ++i) lo *= 2.0;
  for (int i = 0; i < 200 && (*this)(hi) < w; ++i) hi *= 2.0;
  if ((*this)(lo) > w || (*this)(hi) < w) {
    throw InvalidTransform("g inverse: value " + std::to_string(w) + " is not in the range of g");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++it) {
    const double mid = 0.5 * (lo + hi);
    if ((*this)(mid) < w) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<double> Transform::inverse_breakpoints() const {
  return kind_ == Kind::table ? g_ : std::vector<double>{};
}

Transform::Bounds Transform::validate(double range, std::size_t samples) const {
  if (!(range > 0.0)) throw InvalidTransform("g validation range must be positive");
  if (std::abs((*this)(0.0)) > 1e-12) {
    throw InvalidTransform("g(0) must vanish, got " + std::to_string((*this)(0.0)));
  }
  if (kind_ == Kind::table && (u_.front() > -range || u_.back() < range)) {
    throw InvalidTransform("g table must cover [-" + std::to_string(range) + ", " + std::to_string(range) + "]");
  }
  Bounds b{derivative(0.0), derivative(0.0)};
  auto probe = [&](double u) {
    const double d = derivative(u);
    if (!(d > 0.0) || !std::isfinite(d)) {
      throw InvalidTransform("g' must be positive on the working range; g'(" + std::to_string(u) +
                             ") = " + std::to_string(d));
    }
    b.slope_min = std::min(b.slope_min, d);
    b.slope_max = std::max(b.slope_max, d);
  };
  for (std::size_t i = 0; i < samples; ++i) {
    probe(-range + 2.0 * range * static_cast<double>(i) / static_cast<double>(samples - 1));
  }
  if (kind_ == Kind::table) {
    for (std::size_t j = 0; j + 1 < u_.size(); ++j) probe(0.5 * (u_[j] + u_[j + 1]));
  }
  return b;
}

}  // namespace porohyst
