#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>

#include "porohyst/simulation_state.hpp"

namespace porohyst {

/// FNV-1a hash of the serialized scenario; a checkpoint only restores into
/// the scenario it was written from.
std::uint64_t scenario_fingerprint(const Scenario& scenario);

// Binary layout (little-endian): "PHCK" magic, uint32 version = 1,
// uint64 fingerprint, uint64 step, float64 time, uint64 nodes, then u, v,
// theta as nodes float64 each, then the memory block of write_memory_binary.
void write_checkpoint(std::ostream& out, const SimulationState& state, std::uint64_t fingerprint);
/// Throws InvalidScenario when the fingerprint does not match `expected`.
SimulationState read_checkpoint(std::istream& in, std::uint64_t expected);

void save_checkpoint(const std::filesystem::path& path, const SimulationState& state, std::uint64_t fingerprint);
SimulationState load_checkpoint(const std::filesystem::path& path, std::uint64_t expected);

}  // namespace porohyst
