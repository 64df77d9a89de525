#pragma once

#include <cstddef>

#include "porohyst/field.hpp"
#include "porohyst/memory_state.hpp"
#include "porohyst/scenario.hpp"

namespace porohyst {

/// Committed state after step i: pressure u_i, volume strain v_i, saturation
/// theta_i = G[u]_i evaluated from the committed memory, and the memory.
struct SimulationState {
  std::size_t step = 0;
  double time = 0.0;
  Field u;
  Field v;
  Field theta;
  MemoryState memory;
  friend bool operator==(const SimulationState&, const SimulationState&) = default;
};

/// State at t = 0: u0, v0, the initial memory and theta0 from that memory.
SimulationState initial_state(const Problem& problem);

}  // namespace porohyst
