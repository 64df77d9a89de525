#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace porohyst {

/// Midpoint quadrature over play thresholds r in (0, Lambda].
///
/// Node k sits at (k + 1/2) * Lambda / K with weight Lambda / K, so all
/// weights are positive and sum to Lambda.
class ThresholdGrid {
 public:
  ThresholdGrid(double lambda, std::size_t count);

  std::size_t size() const noexcept { return nodes_.size(); }
  double lambda() const noexcept { return lambda_; }
  double spacing() const noexcept { return lambda_ / static_cast<double>(nodes_.size()); }

  std::span<const double> nodes() const noexcept { return nodes_; }
  std::span<const double> weights() const noexcept { return weights_; }
  double node(std::size_t k) const { return nodes_[k]; }
  double weight(std::size_t k) const { return weights_[k]; }

  friend bool operator==(const ThresholdGrid&, const ThresholdGrid&) = default;

 private:
  double lambda_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

}  // namespace porohyst
