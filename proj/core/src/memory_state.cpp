#include "porohyst/memory_state.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "porohyst/csv.hpp"
#include "porohyst/errors.hpp"
#include "porohyst/play.hpp"

namespace porohyst {

MemoryState update_memory(const MemoryState& state, const Field& input, const ThresholdGrid& grid) {
  if (state.nodes() != input.size() || state.thresholds() != grid.size()) {
    throw DimensionMismatch("update_memory: state is " + std::to_string(state.nodes()) + "x" +
                            std::to_string(state.thresholds()) + ", input has " +
                            std::to_string(input.size()) + " nodes and grid " +
                            std::to_string(grid.size()) + " thresholds");
  }
  MemoryState next = state;
  const auto r = grid.nodes();
  for (std::size_t node = 0; node < state.nodes(); ++node) {
    const double u = input[node];
    auto row = next.row(node);
    for (std::size_t k = 0; k < row.size(); ++k) {
      row[k] = play_clamp(row[k], u, r[k]);
    }
  }
  return next;
}

namespace {
constexpr char kMemoryMagic[4] = {'P', 'H', 'M', 'S'};
constexpr std::uint32_t kMemoryVersion = 1;
}  // namespace

void write_memory_binary(std::ostream& out, const MemoryState& state) {
  out.write(kMemoryMagic, 4);
  io::write_u32(out, kMemoryVersion);
  io::write_u64(out, state.nodes());
  io::write_u64(out, state.thresholds());
  for (double x : state.data()) io::write_f64(out, x);
}

MemoryState read_memory_binary(std::istream& in) {
  char magic[4] = {};
  if (!in.read(magic, 4) || !std::equal(magic, magic + 4, kMemoryMagic)) {
    throw std::runtime_error("memory file: bad magic");
  }
  if (io::read_u32(in) != kMemoryVersion) throw std::runtime_error("memory file: unsupported version");
  const auto nodes = io::read_u64(in);
  const auto thresholds = io::read_u64(in);
  MemoryState state(nodes, thresholds);
  for (std::size_t n = 0; n < nodes; ++n) {
    for (std::size_t k = 0; k < thresholds; ++k) state.at(n, k) = io::read_f64(in);
  }
  return state;
}

void write_memory_csv(std::ostream& out, const MemoryState& state, const ThresholdGrid& grid) {
  if (state.thresholds() != grid.size()) throw DimensionMismatch("write_memory_csv: grid size mismatch");
  out << "node";
  for (double r : grid.nodes()) out << ',' << io::format_double(r);
  out << '\n';
  for (std::size_t n = 0; n < state.nodes(); ++n) {
    out << n;
    for (double x : state.row(n)) out << ',' << io::format_double(x);
    out << '\n';
  }
}

MemoryState read_memory_csv(std::istream& in, const ThresholdGrid& grid) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("memory csv: empty input");
  const auto header = io::split_csv_line(line);
  if (header.empty() || header.front() != "node" || header.size() != grid.size() + 1) {
    throw DimensionMismatch("memory csv: header must be 'node' followed by " +
                            std::to_string(grid.size()) + " threshold values");
  }
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double r = io::parse_double(header[k + 1]);
    if (std::abs(r - grid.node(k)) > 1e-12 * std::max(1.0, grid.lambda())) {
      throw DimensionMismatch("memory csv: threshold column " + std::to_string(k) +
                              " does not match the threshold grid");
    }
  }
  std::vector<double> values;
  std::size_t rows = 0;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto cells = io::split_csv_line(line);
    if (cells.size() != grid.size() + 1 || std::stoul(cells.front()) != rows) {
      throw DimensionMismatch("memory csv: malformed row at line " + std::to_string(line_no));
    }
    for (std::size_t k = 1; k < cells.size(); ++k) values.push_back(io::parse_double(cells[k]));
    ++rows;
  }
  MemoryState state(rows, grid.size());
  for (std::size_t n = 0; n < rows; ++n) {
    for (std::size_t k = 0; k < grid.size(); ++k) state.at(n, k) = values[n * grid.size() + k];
  }
  return state;
}

void save_memory(const std::filesystem::path& path, const MemoryState& state, const ThresholdGrid& grid) {
  if (path.extension() == ".csv") {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    write_memory_csv(out, state, grid);
  } else {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    write_memory_binary(out, state);
  }
}

MemoryState load_memory(const std::filesystem::path& path, const ThresholdGrid& grid) {
  if (path.extension() == ".csv") {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    return read_memory_csv(in, grid);
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  auto state = read_memory_binary(in);
  if (state.thresholds() != grid.size()) throw DimensionMismatch("memory file: threshold count mismatch");
  return state;
}

}  // namespace porohyst
