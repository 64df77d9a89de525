#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "porohyst/field.hpp"
#include "porohyst/threshold_grid.hpp"

namespace porohyst {

/// Play outputs xi^r for every (spatial node, threshold), stored row-major
/// with one row per node. This is the complete hysteresis memory.
class MemoryState {
 public:
  MemoryState() = default;
  MemoryState(std::size_t nodes, std::size_t thresholds, double value = 0.0)
      : nodes_(nodes), thresholds_(thresholds), xi_(nodes * thresholds, value) {}

  std::size_t nodes() const noexcept { return nodes_; }
  std::size_t thresholds() const noexcept { return thresholds_; }

  double& at(std::size_t node, std::size_t k) { return xi_[node * thresholds_ + k]; }
  double at(std::size_t node, std::size_t k) const { return xi_[node * thresholds_ + k]; }

  std::span<double> row(std::size_t node) { return {xi_.data() + node * thresholds_, thresholds_}; }
  std::span<const double> row(std::size_t node) const {
    return {xi_.data() + node * thresholds_, thresholds_};
  }
  std::span<const double> data() const noexcept { return xi_; }

  friend bool operator==(const MemoryState&, const MemoryState&) = default;

 private:
  std::size_t nodes_ = 0;
  std::size_t thresholds_ = 0;
  std::vector<double> xi_;
};

/// Applies the discrete play independently to every (node, threshold) with
/// play input `input(node)`. Throws DimensionMismatch on shape disagreement.
MemoryState update_memory(const MemoryState& state, const Field& input, const ThresholdGrid& grid);

// Binary layout (little-endian): "PHMS" magic, uint32 version = 1,
// uint64 nodes, uint64 thresholds, then nodes*thresholds float64 row-major.
void write_memory_binary(std::ostream& out, const MemoryState& state);
MemoryState read_memory_binary(std::istream& in);

// CSV layout: header "node,<r_0>,...,<r_{K-1}>" followed by one row per node
// "<id>,<xi_0>,...". Values carry 17 significant digits.
void write_memory_csv(std::ostream& out, const MemoryState& state, const ThresholdGrid& grid);
MemoryState read_memory_csv(std::istream& in, const ThresholdGrid& grid);

void save_memory(const std::filesystem::path& path, const MemoryState& state, const ThresholdGrid& grid);
MemoryState load_memory(const std::filesystem::path& path, const ThresholdGrid& grid);

}  // namespace porohyst
