#pragma once

#include <string>
#include <vector>

#include "porohyst/field.hpp"
#include "porohyst/memory_state.hpp"
#include "porohyst/threshold_grid.hpp"

namespace porohyst {

/// Initial memory curve lambda(x, r) sampled at the threshold nodes; it is
/// the play state xi^r at time zero.
struct InitialMemory {
  MemoryState lambda;
  double Lambda = 0.0;
};

/// lambda(x, r) = sign(w0) max(0, |w0| - r): the state left by a monotone
/// path from 0 to w0. Throws IncompatibleInitialData when sup|w0| > Lambda.
InitialMemory build_virgin_memory(const Field& w0, const ThresholdGrid& grid);

inline double virgin_memory_value(double w0, double r) {
  const double mag = w0 < 0.0 ? -w0 : w0;
  const double excess = mag > r ? mag - r : 0.0;
  return w0 < 0.0 ? -excess : excess;
}

struct MemoryInvariantReport {
  // |lambda(r_k) - w0| <= r_k at the first node: lambda(x, 0) = w0(x) up to the 1-Lipschitz slack.
  bool anchored = true;
  // |lambda(r_{k+1}) - lambda(r_k)| <= r_{k+1} - r_k.
  bool lipschitz = true;
  // |lambda(r_k)| <= Lambda - r_k, so lambda vanishes at r = Lambda.
  bool supported = true;
  std::vector<std::string> messages;

  bool ok() const noexcept { return anchored && lipschitz && supported; }
};

MemoryInvariantReport check_memory_invariants(const MemoryState& lambda, const ThresholdGrid& grid, const Field& w0,
                                              double tolerance = 1e-12);

}  // namespace porohyst
