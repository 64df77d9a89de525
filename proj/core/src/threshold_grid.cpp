#include "porohyst/threshold_grid.hpp"

#include <cmath>

#include "porohyst/errors.hpp"

namespace porohyst {

ThresholdGrid::ThresholdGrid(double lambda, std::size_t count) : lambda_(lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw InvalidThreshold("threshold grid: Lambda must be positive and finite");
  }
  if (count == 0) {
    throw InvalidThreshold("threshold grid: at least one threshold node is required");
  }
  const double h = lambda / static_cast<double>(count);
  nodes_.resize(count);
  weights_.assign(count, h);
  for (std::size_t k = 0; k < count; ++k) {
    nodes_[k] = (static_cast<double>(k) + 0.5) * h;
  }
}

}  // namespace porohyst
