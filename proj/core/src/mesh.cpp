#include "porohyst/mesh.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

#include "porohyst/csv.hpp"
#include "porohyst/errors.hpp"

namespace porohyst {

namespace {

constexpr double kGauss = 0.57735026918962576451;  // 1/sqrt(3)
constexpr std::array<double, 4> kCornerXi{-1.0, 1.0, 1.0, -1.0};
constexpr std::array<double, 4> kCornerEta{-1.0, -1.0, 1.0, 1.0};

}  // namespace

std::string_view side_name(Side side) {
  switch (side) {
    case Side::left: return "left";
    case Side::right: return "right";
    case Side::bottom: return "bottom";
    case Side::top: return "top";
  }
  return "?";
}

Mesh Mesh::interval(double length, std::size_t nodes) {
  if (!(length > 0.0) || !std::isfinite(length)) throw InvalidScenario("mesh.extent", "length must be positive");
  if (nodes < 2) throw InvalidScenario("mesh.nodes", "need at least 2 nodes");
  Mesh mesh;
  mesh.dimension_ = 1;
  mesh.nx_ = nodes;
  mesh.ny_ = 1;
  mesh.extent_ = {length, 0.0};
  const double h = length / static_cast<double>(nodes - 1);
  mesh.spacing_ = {h, 0.0};
  mesh.element_measure_ = h;
  mesh.coords_.resize(nodes);
  mesh.lumped_mass_.assign(nodes, 0.0);
  for (std::size_t i = 0; i < nodes; ++i) {
    // Last node pinned exactly to the extent.
    mesh.coords_[i] = {i + 1 == nodes ? length : h * static_cast<double>(i), 0.0};
  }
  for (std::size_t e = 0; e + 1 < nodes; ++e) {
    mesh.elements_.push_back({e, e + 1, 0, 0});
    mesh.lumped_mass_[e] += 0.5 * h;
    mesh.lumped_mass_[e + 1] += 0.5 * h;
  }
  mesh.boundary_.push_back({0, Side::left, 1.0, {-1.0, 0.0}});
  mesh.boundary_.push_back({nodes - 1, Side::right, 1.0, {1.0, 0.0}});
  mesh.build_quadrature();
  return mesh;
}

Mesh Mesh::rectangle(double lx, double ly, std::size_t nx, std::size_t ny) {
  if (!(lx > 0.0) || !(ly > 0.0) || !std::isfinite(lx) || !std::isfinite(ly)) {
    throw InvalidScenario("mesh.extent", "extents must be positive");
  }
  if (nx < 2 || ny < 2) throw InvalidScenario("mesh.nodes", "need at least 2 nodes per axis");
  Mesh mesh;
  mesh.dimension_ = 2;
  mesh.nx_ = nx;
  mesh.ny_ = ny;
  mesh.extent_ = {lx, ly};
  const double hx = lx / static_cast<double>(nx - 1);
  const double hy = ly / static_cast<double>(ny - 1);
  mesh.spacing_ = {hx, hy};
  mesh.element_measure_ = hx * hy;
  mesh.coords_.resize(nx * ny);
  mesh.lumped_mass_.assign(nx * ny, 0.0);
  for (std::size_t j = 0; j < ny; ++j) {
    for (std::size_t i = 0; i < nx; ++i) {
      mesh.coords_[i + nx * j] = {i + 1 == nx ? lx : hx * static_cast<double>(i),
                                  j + 1 == ny ? ly : hy * static_cast<double>(j)};
    }
  }
  for (std::size_t j = 0; j + 1 < ny; ++j) {
    for (std::size_t i = 0; i + 1 < nx; ++i) {
      const std::size_t n0 = i + nx * j;
      const std::array<std::size_t, 4> el{n0, n0 + 1, n0 + 1 + nx, n0 + nx};
      mesh.elements_.push_back(el);
      for (std::size_t a : el) mesh.lumped_mass_[a] += 0.25 * hx * hy;
    }
  }
  auto add_side = [&mesh](Side side, std::size_t count, double h, auto node_of, Point normal) {
    for (std::size_t k = 0; k < count; ++k) {
      const double measure = (k == 0 || k + 1 == count) ? 0.5 * h : h;
      mesh.boundary_.push_back({node_of(k), side, measure, normal});
    }
  };
  add_side(Side::left, ny, hy, [nx](std::size_t k) { return nx * k; }, {-1.0, 0.0});
  add_side(Side::right, ny, hy, [nx](std::size_t k) { return nx * k + nx - 1; }, {1.0, 0.0});
  add_side(Side::bottom, nx, hx, [](std::size_t k) { return k; }, {0.0, -1.0});
  add_side(Side::top, nx, hx, [nx, ny](std::size_t k) { return nx * (ny - 1) + k; }, {0.0, 1.0});
  mesh.build_quadrature();
  return mesh;
}

double Mesh::total_measure() const noexcept {
  return dimension_ == 1 ? extent_[0] : extent_[0] * extent_[1];
}

Point Mesh::centroid() const noexcept { return {0.5 * extent_[0], 0.5 * extent_[1]}; }

void Mesh::build_quadrature() {
  quadrature_.clear();
  if (dimension_ == 1) {
    const double h = spacing_[0];
    quadrature_.push_back({{0.5 * h, 0.0}, h, {Point{-1.0 / h, 0.0}, Point{1.0 / h, 0.0}, Point{}, Point{}}});
    return;
  }
  const double hx = spacing_[0];
  const double hy = spacing_[1];
  for (double eta : {-kGauss, kGauss}) {
    for (double xi : {-kGauss, kGauss}) {
      QuadraturePoint q{{0.5 * (1.0 + xi) * hx, 0.5 * (1.0 + eta) * hy}, 0.25 * hx * hy, {}};
      for (std::size_t a = 0; a < 4; ++a) {
        const double s = kCornerXi[a];
        const double t = kCornerEta[a];
        q.grads[a] = {0.5 * s * (1.0 + t * eta) / hx, 0.5 * t * (1.0 + s * xi) / hy};
      }
      quadrature_.push_back(q);
    }
  }
}

Point Mesh::quadrature_position(std::size_t e, const QuadraturePoint& q) const {
  const Point& origin = coords_[elements_[e][0]];
  return {origin[0] + q.offset[0], origin[1] + q.offset[1]};
}

Point Mesh::gradient_at(std::size_t e, const QuadraturePoint& q, std::span<const double> values) const {
  const auto& el = elements_[e];
  Point g{0.0, 0.0};
  for (std::size_t a = 0; a < nodes_per_element(); ++a) {
    g[0] += q.grads[a][0] * values[el[a]];
    g[1] += q.grads[a][1] * values[el[a]];
  }
  return g;
}

void Mesh::write_nodes_csv(std::ostream& out) const {
  out << (dimension_ == 1 ? "node,x\n" : "node,x,y\n");
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    out << i << ',' << io::format_double(coords_[i][0]);
    if (dimension_ == 2) out << ',' << io::format_double(coords_[i][1]);
    out << '\n';
  }
}

void Mesh::write_connectivity_csv(std::ostream& out) const {
  out << (dimension_ == 1 ? "element,n0,n1\n" : "element,n0,n1,n2,n3\n");
  for (std::size_t e = 0; e < elements_.size(); ++e) {
    out << e;
    for (std::size_t a = 0; a < nodes_per_element(); ++a) out << ',' << elements_[e][a];
    out << '\n';
  }
}

}  // namespace porohyst
