#include "porohyst/density.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <string>

#include "porohyst/csv.hpp"
#include "porohyst/errors.hpp"
#include "porohyst/quadrature.hpp"

namespace porohyst {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double sign_of(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

// int_a^{a+s} z^(-p) dz for a > 0, s >= 0, written to avoid cancellation for small s.
double power_integral(double a, double s, double p) {
  if (s <= 0.0) return 0.0;
  const double l = std::log1p(s / a);
  if (std::abs(1.0 - p) < 1e-14) return l;
  const double q = 1.0 - p;
  return std::pow(a, q) * std::expm1(q * l) / q;
}

// ---- uniform box ---------------------------------------------------------

bool box_row(const UniformBoxDensity& b, double r) { return r > b.r_lo && r <= b.r_hi; }

double box_psi(const UniformBoxDensity& b, double r, double xi) {
  if (!box_row(b, r)) return 0.0;
  return b.height * (std::clamp(xi, b.v_lo, b.v_hi) - std::clamp(0.0, b.v_lo, b.v_hi));
}

double box_Psi(const UniformBoxDensity& b, double r, double xi) {
  if (!box_row(b, r)) return 0.0;
  const double hi = std::clamp(xi, b.v_lo, b.v_hi);
  const double lo = std::clamp(0.0, b.v_lo, b.v_hi);
  return 0.5 * b.height * (hi * hi - lo * lo);
}

// ---- decay family --------------------------------------------------------

// int_0^s max(1, r+v)^(-m) dv, s >= 0.
double decay_first(const DecayDensity& d, double r, double s) {
  if (r >= 1.0) return power_integral(r, s, d.m);
  const double flat = std::min(s, 1.0 - r);
  return flat + (s > 1.0 - r ? power_integral(1.0, s - (1.0 - r), d.m) : 0.0);
}

// int_0^s v max(1, r+v)^(-m) dv, s >= 0. With z = r + v the integrand is (z - r) z^(-m).
double decay_second(const DecayDensity& d, double r, double s) {
  if (r >= 1.0) return power_integral(r, s, d.m - 1.0) - r * power_integral(r, s, d.m);
  const double flat = std::min(s, 1.0 - r);
  double value = 0.5 * flat * flat;
  if (s > 1.0 - r) {
    const double rest = s - (1.0 - r);
    value += power_integral(1.0, rest, d.m - 1.0) - r * power_integral(1.0, rest, d.m);
  }
  return value;
}

}  // namespace

// ---- tabulated -----------------------------------------------------------

TabulatedDensity::TabulatedDensity(std::vector<double> r, std::vector<double> v, std::vector<double> phi)
    : r_(std::move(r)), v_(std::move(v)), phi_(std::move(phi)) {
  if (r_.size() < 2 || v_.size() < 2) {
    throw InvalidScenario("density.table", "tabulated density needs at least 2 r and 2 v values");
  }
  if (phi_.size() != r_.size() * v_.size()) {
    throw InvalidScenario("density.table", "table is not a full r x v grid");
  }
  if (!std::is_sorted(r_.begin(), r_.end()) || std::adjacent_find(r_.begin(), r_.end()) != r_.end() ||
      !std::is_sorted(v_.begin(), v_.end()) || std::adjacent_find(v_.begin(), v_.end()) != v_.end()) {
    throw InvalidScenario("density.table", "r and v grids must be strictly increasing");
  }
  if (r_.front() < 0.0) throw InvalidScenario("density.table", "thresholds r must be nonnegative");
  for (double x : phi_) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
      throw InvalidScenario("density.table", "density values must be finite and nonnegative");
    }
  }
  const std::size_t nv = v_.size();
  cum0_.assign(phi_.size(), 0.0);
  cum1_.assign(phi_.size(), 0.0);
  row_max_.assign(r_.size(), 0.0);
  for (std::size_t i = 0; i < r_.size(); ++i) {
    const double* row = &phi_[i * nv];
    row_max_[i] = *std::max_element(row, row + nv);
    for (std::size_t j = 0; j + 1 < nv; ++j) {
      const double h = v_[j + 1] - v_[j];
      const double a = row[j];
      const double c = row[j + 1];
      cum0_[i * nv + j + 1] = cum0_[i * nv + j] + 0.5 * h * (a + c);
      cum1_[i * nv + j + 1] = cum1_[i * nv + j] + h * (v_[j] * (2.0 * a + c) + v_[j + 1] * (a + 2.0 * c)) / 6.0;
    }
  }
}

bool TabulatedDensity::bracket(double r, std::size_t& row, double& t) const {
  if (r < r_.front() || r > r_.back()) return false;
  auto it = std::upper_bound(r_.begin(), r_.end(), r);
  std::size_t hi = static_cast<std::size_t>(it - r_.begin());
  if (hi >= r_.size()) hi = r_.size() - 1;
  row = hi - 1;
  t = (r - r_[row]) / (r_[hi] - r_[row]);
  return true;
}

double TabulatedDensity::row_phi(std::size_t row, double v) const {
  if (v < v_.front() || v > v_.back()) return 0.0;
  auto it = std::upper_bound(v_.begin(), v_.end(), v);
  std::size_t j = static_cast<std::size_t>(it - v_.begin());
  if (j >= v_.size()) j = v_.size() - 1;
  --j;
  const double s = (v - v_[j]) / (v_[j + 1] - v_[j]);
  return (1.0 - s) * value(row, j) + s * value(row, j + 1);
}

double TabulatedDensity::row_first_moment(std::size_t row, double xi) const {
  const std::size_t nv = v_.size();
  if (xi <= v_.front()) return 0.0;
  if (xi >= v_.back()) return cum0_[row * nv + nv - 1];
  auto it = std::upper_bound(v_.begin(), v_.end(), xi);
  const std::size_t j = static_cast<std::size_t>(it - v_.begin()) - 1;
  const double a = value(row, j);
  const double c = row_phi(row, xi);
  return cum0_[row * nv + j] + 0.5 * (xi - v_[j]) * (a + c);
}

double TabulatedDensity::row_second_moment(std::size_t row, double xi) const {
  const std::size_t nv = v_.size();
  if (xi <= v_.front()) return 0.0;
  if (xi >= v_.back()) return cum1_[row * nv + nv - 1];
  auto it = std::upper_bound(v_.begin(), v_.end(), xi);
  const std::size_t j = static_cast<std::size_t>(it - v_.begin()) - 1;
  const double a = value(row, j);
  const double c = row_phi(row, xi);
  return cum1_[row * nv + j] + (xi - v_[j]) * (v_[j] * (2.0 * a + c) + xi * (a + 2.0 * c)) / 6.0;
}

double TabulatedDensity::phi(double r, double v) const {
  std::size_t row = 0;
  double t = 0.0;
  if (!bracket(r, row, t)) return 0.0;
  return std::max(0.0, (1.0 - t) * row_phi(row, v) + t * row_phi(row + 1, v));
}

double TabulatedDensity::psi(double r, double xi) const {
  std::size_t row = 0;
  double t = 0.0;
  if (!bracket(r, row, t)) return 0.0;
  const double lo = (1.0 - t) * (row_first_moment(row, xi) - row_first_moment(row, 0.0));
  const double hi = t * (row_first_moment(row + 1, xi) - row_first_moment(row + 1, 0.0));
  return lo + hi;
}

double TabulatedDensity::Psi(double r, double xi) const {
  std::size_t row = 0;
  double t = 0.0;
  if (!bracket(r, row, t)) return 0.0;
  const double lo = (1.0 - t) * (row_second_moment(row, xi) - row_second_moment(row, 0.0));
  const double hi = t * (row_second_moment(row + 1, xi) - row_second_moment(row + 1, 0.0));
  return lo + hi;
}

double TabulatedDensity::sup_phi(double r) const {
  std::size_t row = 0;
  double t = 0.0;
  if (!bracket(r, row, t)) return 0.0;
  return (1.0 - t) * row_max_[row] + t * row_max_[row + 1];
}

// ---- PreisachDensity -----------------------------------------------------

PreisachDensity::PreisachDensity(DensityKind kind, double g_bar, std::vector<double> modulation)
    : kind_(std::move(kind)), g_bar_(g_bar), modulation_(std::move(modulation)) {
  if (!std::isfinite(g_bar_)) throw InvalidScenario("density.g_bar", "must be finite");
  for (double m : modulation_) {
    if (!(m >= 0.0) || !std::isfinite(m)) {
      throw InvalidScenario("density.modulation", "multipliers must be finite and nonnegative");
    }
  }
  std::visit(overloaded{
                 [](const UniformBoxDensity& b) {
                   if (!(b.height >= 0.0) || !std::isfinite(b.height))
                     throw InvalidScenario("density.height", "must be finite and nonnegative");
                   if (!(b.r_lo >= 0.0) || !(b.r_hi > b.r_lo))
                     throw InvalidScenario("density.r_range", "need 0 <= r_lo < r_hi");
                   if (!(b.v_hi > b.v_lo)) throw InvalidScenario("density.v_range", "need v_lo < v_hi");
                 },
                 [](const DecayDensity& d) {
                   if (!(d.m > 0.0) || !std::isfinite(d.m)) throw InvalidScenario("density.m", "must be positive");
                   if (!(d.phi0 > 0.0) || !std::isfinite(d.phi0))
                     throw InvalidScenario("density.phi0", "must be positive");
                 },
                 [](const TabulatedDensity&) {},
             },
             kind_);
}

double PreisachDensity::max_multiplier() const noexcept {
  return modulation_.empty() ? 1.0 : *std::max_element(modulation_.begin(), modulation_.end());
}

double PreisachDensity::phi(double r, double v) const {
  return std::visit(overloaded{
                        [&](const UniformBoxDensity& b) {
                          return (box_row(b, r) && v >= b.v_lo && v <= b.v_hi) ? b.height : 0.0;
                        },
                        [&](const DecayDensity& d) { return d.phi0 * std::pow(std::max(1.0, r + std::abs(v)), -d.m); },
                        [&](const TabulatedDensity& t) { return t.phi(r, v); },
                    },
                    kind_);
}

double PreisachDensity::psi(double r, double xi) const {
  return std::visit(overloaded{
                        [&](const UniformBoxDensity& b) { return box_psi(b, r, xi); },
                        [&](const DecayDensity& d) { return sign_of(xi) * d.phi0 * decay_first(d, r, std::abs(xi)); },
                        [&](const TabulatedDensity& t) { return t.psi(r, xi); },
                    },
                    kind_);
}

double PreisachDensity::Psi(double r, double xi) const {
  return std::visit(overloaded{
                        [&](const UniformBoxDensity& b) { return box_Psi(b, r, xi); },
                        [&](const DecayDensity& d) { return d.phi0 * decay_second(d, r, std::abs(xi)); },
                        [&](const TabulatedDensity& t) { return t.Psi(r, xi); },
                    },
                    kind_);
}

double PreisachDensity::sup_phi(double r) const {
  return std::visit(overloaded{
                        [&](const UniformBoxDensity& b) { return box_row(b, r) ? b.height : 0.0; },
                        [&](const DecayDensity& d) { return d.phi0 * std::pow(std::max(1.0, r), -d.m); },
                        [&](const TabulatedDensity& t) { return t.sup_phi(r); },
                    },
                    kind_);
}

std::vector<double> PreisachDensity::v_breakpoints(double r) const {
  return std::visit(overloaded{
                        [&](const UniformBoxDensity& b) { return std::vector<double>{b.v_lo, b.v_hi}; },
                        [&](const DecayDensity&) {
                          return r < 1.0 ? std::vector<double>{-(1.0 - r), 0.0, 1.0 - r} : std::vector<double>{0.0};
                        },
                        [&](const TabulatedDensity& t) { return t.v_grid(); },
                    },
                    kind_);
}

bool PreisachDensity::is_zero() const {
  if (!modulation_.empty() && max_multiplier() == 0.0) return true;
  return std::visit(overloaded{
                        [](const UniformBoxDensity& b) { return b.height == 0.0; },
                        [](const DecayDensity&) { return false; },
                        [](const TabulatedDensity& t) {
                          return std::all_of(t.values().begin(), t.values().end(), [](double x) { return x == 0.0; });
                        },
                    },
                    kind_);
}

bool PreisachDensity::is_v_independent(double range) const {
  constexpr int kSamples = 41;
  for (int i = 1; i <= kSamples; ++i) {
    const double r = range * static_cast<double>(i) / kSamples;
    const double ref = phi(r, 0.0);
    for (int j = 0; j <= kSamples; ++j) {
      const double v = -range + 2.0 * range * static_cast<double>(j) / kSamples;
      if (std::abs(phi(r, v) - ref) > 1e-12 * std::max(1.0, std::abs(ref))) return false;
    }
  }
  return true;
}

double decay_cutoff_radius(const DecayDensity& decay) {
  // Tail beyond r + v = R has mass phi0 * R^(2-m) / (m-2); pick R so it is below 1e-8.
  const double target = 1e-8 * (decay.m - 2.0) / decay.phi0;
  const double radius = std::pow(target, 1.0 / (2.0 - decay.m));
  return std::max(2.0, radius);
}

std::pair<double, double> density_mass(const PreisachDensity& density) {
  return std::visit(
      overloaded{
          [&](const UniformBoxDensity& b) {
            const double up = integrate([&](double r) { return box_psi(b, r, std::numeric_limits<double>::max()); },
                                        b.r_lo, b.r_hi, 4, 8);
            const double down = integrate([&](double r) { return -box_psi(b, r, std::numeric_limits<double>::lowest()); },
                                          b.r_lo, b.r_hi, 4, 8);
            return std::pair{up, down};
          },
          [&](const DecayDensity& d) {
            if (d.m <= 2.0) {
              throw DivergentMass("decay density with m = " + std::to_string(d.m) +
                                  " has infinite mass (need m > 2)");
            }
            const double radius = decay_cutoff_radius(d);
            auto inner = [&](double r) { return d.phi0 * decay_first(d, r, radius - r); };
            // Geometric panels resolve the algebraic decay up to the cutoff.
            double truncated = integrate(inner, 0.0, 1.0, 4, 16);
            for (double a = 1.0; a < radius; a *= 2.0) {
              truncated += integrate(inner, a, std::min(2.0 * a, radius), 2, 16);
            }
            const double tail = d.phi0 * std::pow(radius, 2.0 - d.m) / (d.m - 2.0);
            const double total = truncated + tail;
            return std::pair{total, total};
          },
          [&](const TabulatedDensity& t) {
            const auto& r = t.r_grid();
            const double vmax = t.v_grid().back();
            const double vmin = t.v_grid().front();
            double up = 0.0;
            double down = 0.0;
            for (std::size_t i = 0; i + 1 < r.size(); ++i) {
              up += integrate([&](double x) { return t.psi(x, std::max(vmax, 0.0)); }, r[i], r[i + 1], 1, 4);
              down += integrate([&](double x) { return -t.psi(x, std::min(vmin, 0.0)); }, r[i], r[i + 1], 1, 4);
            }
            return std::pair{up, down};
          },
      },
      density.kind());
}

TabulatedDensity read_tabulated_density(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InvalidScenario("density.file", "empty density table");
  const auto header = io::split_csv_line(line);
  if (header != std::vector<std::string>{"r", "v", "phi"}) {
    throw InvalidScenario("density.file", "density table header must be 'r,v,phi'");
  }
  std::vector<double> rs;
  std::vector<double> vs;
  std::vector<double> values;
  std::vector<double> v_first_row;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto cells = io::split_csv_line(line);
    if (cells.size() != 3) {
      throw InvalidScenario("density.file", "line " + std::to_string(line_no) + ": expected 3 columns");
    }
    const double r = io::parse_double(cells[0]);
    const double v = io::parse_double(cells[1]);
    const double phi = io::parse_double(cells[2]);
    if (phi < 0.0) {
      throw InvalidScenario("density.file", "line " + std::to_string(line_no) + ": negative density value");
    }
    if (rs.empty() || r != rs.back()) rs.push_back(r);
    if (rs.size() == 1) v_first_row.push_back(v);
    vs.push_back(v);
    values.push_back(phi);
  }
  const std::size_t nv = v_first_row.size();
  if (nv == 0 || values.size() != rs.size() * nv) {
    throw InvalidScenario("density.file", "density table is not a complete row-major grid");
  }
  for (std::size_t k = 0; k < vs.size(); ++k) {
    if (vs[k] != v_first_row[k % nv]) {
      throw InvalidScenario("density.file", "every r row must use the same v grid");
    }
  }
  return TabulatedDensity(std::move(rs), std::move(v_first_row), std::move(values));
}

TabulatedDensity load_tabulated_density(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidScenario("density.file", "cannot open " + path.string());
  return read_tabulated_density(in);
}

void write_tabulated_density(std::ostream& out, const TabulatedDensity& table) {
  out << "r,v,phi\n";
  for (std::size_t i = 0; i < table.r_grid().size(); ++i) {
    for (std::size_t j = 0; j < table.v_grid().size(); ++j) {
      out << io::format_double(table.r_grid()[i]) << ',' << io::format_double(table.v_grid()[j]) << ','
          << io::format_double(table.value(i, j)) << '\n';
    }
  }
}

}  // namespace porohyst
