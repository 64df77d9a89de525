#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

namespace porohyst {

using Point = std::array<double, 2>;

enum class Side { left, right, bottom, top };
std::string_view side_name(Side side);

/// One lumped boundary contribution: a node together with the boundary
/// segment it belongs to, its share of that segment's measure and the
/// segment's outward unit normal. Corner nodes of 2D meshes appear once per
/// adjacent segment.
struct BoundaryFacet {
  std::size_t node;
  Side side;
  double measure;
  Point normal;
};

/// Structured mesh: uniform segments in 1D, uniform bilinear quadrilaterals
/// in 2D. Node (i, j) of a 2D mesh has index i + nx * j.
class Mesh {
 public:
  static Mesh interval(double length, std::size_t nodes);
  static Mesh rectangle(double lx, double ly, std::size_t nx, std::size_t ny);

  int dimension() const noexcept { return dimension_; }
  std::size_t node_count() const noexcept { return coords_.size(); }
  std::size_t element_count() const noexcept { return elements_.size(); }
  std::size_t nodes_per_element() const noexcept { return dimension_ == 1 ? 2 : 4; }
  std::array<std::size_t, 2> shape() const noexcept { return {nx_, ny_}; }
  Point extent() const noexcept { return extent_; }

  const Point& coord(std::size_t node) const { return coords_[node]; }
  const std::array<std::size_t, 4>& element(std::size_t e) const { return elements_[e]; }
  double element_measure() const noexcept { return element_measure_; }
  double lumped_mass(std::size_t node) const { return lumped_mass_[node]; }
  const std::vector<double>& lumped_masses() const noexcept { return lumped_mass_; }
  const std::vector<BoundaryFacet>& boundary() const noexcept { return boundary_; }

  double total_measure() const noexcept;
  Point centroid() const noexcept;

  /// Quadrature of one element relative to its first node; identical for
  /// every element of a structured mesh. 1D: one midpoint (exact for the
  /// piecewise-constant gradients). 2D: 2x2 Gauss.
  struct QuadraturePoint {
    Point offset;
    double weight;
    std::array<Point, 4> grads;  // shape function gradients at the point
  };
  const std::vector<QuadraturePoint>& quadrature() const noexcept { return quadrature_; }
  Point quadrature_position(std::size_t e, const QuadraturePoint& q) const;
  /// Gradient of a nodal field at quadrature point q of element e.
  Point gradient_at(std::size_t e, const QuadraturePoint& q, std::span<const double> values) const;

  void write_nodes_csv(std::ostream& out) const;
  void write_connectivity_csv(std::ostream& out) const;

 private:
  Mesh() = default;
  void build_quadrature();

  int dimension_ = 1;
  std::size_t nx_ = 0;
  std::size_t ny_ = 1;
  Point extent_{0.0, 0.0};
  Point spacing_{0.0, 0.0};
  double element_measure_ = 0.0;
  std::vector<Point> coords_;
  std::vector<std::array<std::size_t, 4>> elements_;
  std::vector<double> lumped_mass_;
  std::vector<BoundaryFacet> boundary_;
  std::vector<QuadraturePoint> quadrature_;
};

}  // namespace porohyst
