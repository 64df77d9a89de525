#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace porohyst::io {

/// Shortest-round-trip-safe rendering with 17 significant digits.
std::string format_double(double value);

std::vector<std::string> split_csv_line(std::string_view line);
double parse_double(std::string_view text);

// Little-endian primitives shared by the binary memory and checkpoint formats.
void write_u32(std::ostream& out, std::uint32_t value);
void write_u64(std::ostream& out, std::uint64_t value);
void write_f64(std::ostream& out, double value);
std::uint32_t read_u32(std::istream& in);
std::uint64_t read_u64(std::istream& in);
double read_f64(std::istream& in);

}  // namespace porohyst::io
