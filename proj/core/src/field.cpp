#include "porohyst/field.hpp"

#include <algorithm>
#include <cmath>

namespace porohyst {

bool Field::all_finite() const noexcept {
  return std::all_of(values_.begin(), values_.end(), [](double x) { return std::isfinite(x); });
}

double Field::sup_norm() const noexcept {
  double m = 0.0;
  for (double x : values_) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace porohyst
