#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <utility>
#include <variant>
#include <vector>

namespace porohyst {

/// phi = height on (r_lo, r_hi] x [v_lo, v_hi], zero elsewhere.
struct UniformBoxDensity {
  double r_lo = 0.0;
  double r_hi = 1.0;
  double v_lo = -1.0;
  double v_hi = 1.0;
  double height = 1.0;

  friend bool operator==(const UniformBoxDensity&, const UniformBoxDensity&) = default;
};

/// phi = phi0 * max(1, r + |v|)^(-m). Finite total mass requires m > 2.
struct DecayDensity {
  double m = 4.0;
  double phi0 = 0.5;

  friend bool operator==(const DecayDensity&, const DecayDensity&) = default;
};

/// Bilinear interpolant of tabulated values on an (r, v) grid, zero outside.
///
/// Cumulative integrals of phi and v*phi along v are precomputed per table
/// row, so psi and Psi are exact integrals of the interpolant and psi is
/// nondecreasing in xi by construction.
class TabulatedDensity {
 public:
  TabulatedDensity(std::vector<double> r, std::vector<double> v, std::vector<double> phi);

  const std::vector<double>& r_grid() const noexcept { return r_; }
  const std::vector<double>& v_grid() const noexcept { return v_; }
  const std::vector<double>& values() const noexcept { return phi_; }
  double value(std::size_t i, std::size_t j) const { return phi_[i * v_.size() + j]; }

  double phi(double r, double v) const;
  double psi(double r, double xi) const;
  double Psi(double r, double xi) const;
  double sup_phi(double r) const;

  friend bool operator==(const TabulatedDensity& a, const TabulatedDensity& b) {
    return a.r_ == b.r_ && a.v_ == b.v_ && a.phi_ == b.phi_;
  }

 private:
  // Locate r between table rows; returns false outside the table.
  bool bracket(double r, std::size_t& row, double& t) const;
  double row_phi(std::size_t row, double v) const;
  double row_first_moment(std::size_t row, double xi) const;
  double row_second_moment(std::size_t row, double xi) const;

  std::vector<double> r_;
  std::vector<double> v_;
  std::vector<double> phi_;
  std::vector<double> cum0_;  // int_{v_0}^{v_j} phi dv, per row
  std::vector<double> cum1_;  // int_{v_0}^{v_j} v phi dv, per row
  std::vector<double> row_max_;
};

using DensityKind = std::variant<UniformBoxDensity, DecayDensity, TabulatedDensity>;

/// Preisach density phi(x, r, v) = modulation(x) * phi_hat(r, v) with offset
/// saturation G_bar. psi and Psi are the first and second cumulative
/// integrals in v:
///   psi(r, xi) = int_0^xi phi dv,   Psi(r, xi) = int_0^xi v phi dv.
class PreisachDensity {
 public:
  PreisachDensity(DensityKind kind, double g_bar, std::vector<double> modulation = {});

  const DensityKind& kind() const noexcept { return kind_; }
  double g_bar() const noexcept { return g_bar_; }
  const std::vector<double>& modulation() const noexcept { return modulation_; }
  double multiplier(std::size_t node) const noexcept {
    return modulation_.empty() ? 1.0 : modulation_[node];
  }
  double max_multiplier() const noexcept;

  double phi(double r, double v) const;
  double psi(double r, double xi) const;
  double Psi(double r, double xi) const;
  // Upper bound of phi(r, .) over v.
  double sup_phi(double r) const;
  // Points in v where phi(r, .) is not smooth; used to split quadrature.
  std::vector<double> v_breakpoints(double r) const;

  bool is_zero() const;
  // v-independent on [-range, range] for every r in (0, range].
  bool is_v_independent(double range) const;

  friend bool operator==(const PreisachDensity&, const PreisachDensity&) = default;

 private:
  DensityKind kind_;
  double g_bar_;
  std::vector<double> modulation_;
};

/// int_0^inf int_0^inf phi(r, +v) dv dr and the same for -v, at unit modulation.
/// Throws DivergentMass for a decay family with m <= 2.
std::pair<double, double> density_mass(const PreisachDensity& density);

/// Tail-truncation radius used by density_mass for the decay family.
double decay_cutoff_radius(const DecayDensity& decay);

// CSV with header "r,v,phi", rows ordered r-major (v varies fastest).
TabulatedDensity read_tabulated_density(std::istream& in);
TabulatedDensity load_tabulated_density(const std::filesystem::path& path);
void write_tabulated_density(std::ostream& out, const TabulatedDensity& table);

}  // namespace porohyst
