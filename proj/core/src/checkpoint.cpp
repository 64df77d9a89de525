#include "porohyst/checkpoint.hpp"

#include <array>
#include <fstream>
#include <istream>
#include <ostream>

#include "porohyst/csv.hpp"
#include "porohyst/errors.hpp"

namespace porohyst {

namespace {

constexpr std::array<char, 4> kMagic{'P', 'H', 'C', 'K'};
constexpr std::uint32_t kVersion = 1;

void write_field(std::ostream& out, const Field& f) {
  for (double x : f) io::write_f64(out, x);
}

Field read_field(std::istream& in, std::size_t n) {
  Field f(n);
  for (double& x : f) x = io::read_f64(in);
  return f;
}

}  // namespace

std::uint64_t scenario_fingerprint(const Scenario& scenario) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : serialize_scenario(scenario)) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

void write_checkpoint(std::ostream& out, const SimulationState& state, std::uint64_t fingerprint) {
  out.write(kMagic.data(), kMagic.size());
  io::write_u32(out, kVersion);
  io::write_u64(out, fingerprint);
  io::write_u64(out, state.step);
  io::write_f64(out, state.time);
  io::write_u64(out, state.u.size());
  write_field(out, state.u);
  write_field(out, state.v);
  write_field(out, state.theta);
  write_memory_binary(out, state.memory);
  if (!out) throw std::runtime_error("checkpoint: write failed");
}

SimulationState read_checkpoint(std::istream& in, std::uint64_t expected) {
  std::array<char, 4> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic) throw InvalidScenario("checkpoint", "not a checkpoint file");
  if (io::read_u32(in) != kVersion) throw InvalidScenario("checkpoint", "unsupported checkpoint version");
  if (io::read_u64(in) != expected) throw InvalidScenario("checkpoint", "written for a different scenario");
  SimulationState s;
  s.step = io::read_u64(in);
  s.time = io::read_f64(in);
  const std::size_t n = io::read_u64(in);
  s.u = read_field(in, n);
  s.v = read_field(in, n);
  s.theta = read_field(in, n);
  s.memory = read_memory_binary(in);
  if (s.memory.nodes() != n) throw InvalidScenario("checkpoint", "memory block does not match the fields");
  return s;
}

void save_checkpoint(const std::filesystem::path& path, const SimulationState& state, std::uint64_t fingerprint) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write checkpoint " + path.string());
  write_checkpoint(out, state, fingerprint);
}

SimulationState load_checkpoint(const std::filesystem::path& path, std::uint64_t expected) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidScenario("checkpoint", "cannot open " + path.string());
  return read_checkpoint(in, expected);
}

}  // namespace porohyst
