#pragma once

#include <algorithm>

namespace porohyst {

/// Input/output pair of one time-discrete play element.
struct PlayUpdate {
  double xi_prev;
  double u;
  double r;
};

/// Solution of the discrete play variational inequality
///   |u - xi| <= r,  (xi - xi_prev)(u - xi - z) >= 0  for all |z| <= r,
/// i.e. xi_prev projected onto [u - r, u + r]. Throws InvalidThreshold for r <= 0.
double discrete_play_step(double xi_prev, double u, double r);
double discrete_play_step(const PlayUpdate& update);

// Unchecked clamp used in the inner loops once r > 0 is known.
inline double play_clamp(double xi_prev, double u, double r) noexcept {
  return std::max(u - r, std::min(u + r, xi_prev));
}

}  // namespace porohyst
