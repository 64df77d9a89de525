#include "porohyst/play.hpp"

#include <cmath>

#include "porohyst/errors.hpp"

namespace porohyst {

double discrete_play_step(double xi_prev, double u, double r) {
  if (!(r > 0.0)) {
    throw InvalidThreshold("play threshold must be positive, got " + std::to_string(r));
  }
  return play_clamp(xi_prev, u, r);
}

double discrete_play_step(const PlayUpdate& update) {
  return discrete_play_step(update.xi_prev, update.u, update.r);
}

}  // namespace porohyst
