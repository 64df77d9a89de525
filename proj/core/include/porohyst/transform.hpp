#pragma once

#include <cstddef>
#include <vector>

namespace porohyst {

/// Increasing input transform g with G = P o g.
///
/// Kinds: identity, polynomial sum_k c_k u^k (c_0 must vanish), or a
/// piecewise-linear table. validate() enforces g(0) = 0 and
/// slope_min <= g' <= slope_max on [-range, range].
class Transform {
 public:
  enum class Kind { identity, polynomial, table };

  Transform() = default;
  static Transform identity() { return {}; }
  static Transform polynomial(std::vector<double> coefficients);
  static Transform table(std::vector<double> u, std::vector<double> g);

  Kind kind() const noexcept { return kind_; }
  bool is_identity() const noexcept { return kind_ == Kind::identity; }
  const std::vector<double>& coefficients() const noexcept { return coeffs_; }
  const std::vector<double>& table_u() const noexcept { return u_; }
  const std::vector<double>& table_g() const noexcept { return g_; }

  double operator()(double u) const;
  double derivative(double u) const;
  // Inverse on the monotone range; throws InvalidTransform if not bracketed.
  double inverse(double w) const;
  // Kinks of g^{-1} in the w variable (table nodes); empty for smooth kinds.
  std::vector<double> inverse_breakpoints() const;

  struct Bounds {
    double slope_min;
    double slope_max;
  };
  /// Throws InvalidTransform when g(0) != 0 or g' leaves (0, inf) on the sampled range.
  Bounds validate(double range, std::size_t samples = 2001) const;

  friend bool operator==(const Transform&, const Transform&) = default;

 private:
  Kind kind_ = Kind::identity;
  std::vector<double> coeffs_;
  std::vector<double> u_;
  std::vector<double> g_;
};

/// g(u); the composition used to realize G = P o g.
inline double compose_with_g(double u, const Transform& g) { return g(u); }

}  // namespace porohyst
