#include "porohyst/initial_memory.hpp"

#include <cmath>

#include "porohyst/csv.hpp"
#include "porohyst/errors.hpp"

namespace porohyst {

InitialMemory build_virgin_memory(const Field& w0, const ThresholdGrid& grid) {
  const double sup = w0.sup_norm();
  if (!w0.all_finite() || sup > grid.lambda()) {
    throw IncompatibleInitialData("sup|u0| = " + io::format_double(sup) + " exceeds Lambda = " +
                                  io::format_double(grid.lambda()));
  }
  InitialMemory out{MemoryState(w0.size(), grid.size()), grid.lambda()};
  for (std::size_t n = 0; n < w0.size(); ++n) {
    for (std::size_t k = 0; k < grid.size(); ++k) out.lambda.at(n, k) = virgin_memory_value(w0[n], grid.node(k));
  }
  return out;
}

MemoryInvariantReport check_memory_invariants(const MemoryState& lambda, const ThresholdGrid& grid, const Field& w0,
                                              double tolerance) {
  if (lambda.nodes() != w0.size() || lambda.thresholds() != grid.size()) {
    throw DimensionMismatch("memory shape does not match field and threshold grid");
  }
  MemoryInvariantReport report;
  auto note = [&report](bool& flag, const std::string& what, std::size_t node) {
    if (flag) report.messages.push_back(what + " violated at node " + std::to_string(node));
    flag = false;
  };
  for (std::size_t n = 0; n < lambda.nodes(); ++n) {
    if (std::abs(lambda.at(n, 0) - w0[n]) > grid.node(0) + tolerance) note(report.anchored, "lambda(x,0) = u0", n);
    for (std::size_t k = 0; k < grid.size(); ++k) {
      const double value = lambda.at(n, k);
      if (!std::isfinite(value) || std::abs(value) > grid.lambda() - grid.node(k) + tolerance) {
        note(report.supported, "lambda(x,Lambda) = 0", n);
      }
      if (k + 1 < grid.size() &&
          std::abs(lambda.at(n, k + 1) - value) > grid.node(k + 1) - grid.node(k) + tolerance) {
        note(report.lipschitz, "1-Lipschitz in r", n);
      }
    }
  }
  return report;
}

}  // namespace porohyst
