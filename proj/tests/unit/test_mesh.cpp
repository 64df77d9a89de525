#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <sstream>

#include "porohyst/errors.hpp"
#include "porohyst/mesh.hpp"

using namespace porohyst;

namespace {

double mass_sum(const Mesh& mesh) {
  const auto& m = mesh.lumped_masses();
  return std::accumulate(m.begin(), m.end(), 0.0);
}

}  // namespace

TEST(Mesh, IntervalLayout) {
  const Mesh mesh = Mesh::interval(2.0, 5);
  EXPECT_EQ(mesh.dimension(), 1);
  EXPECT_EQ(mesh.node_count(), 5u);
  EXPECT_EQ(mesh.element_count(), 4u);
  EXPECT_DOUBLE_EQ(mesh.element_measure(), 0.5);
  EXPECT_DOUBLE_EQ(mesh.coord(4)[0], 2.0);
  EXPECT_DOUBLE_EQ(mesh.lumped_mass(0), 0.25);
  EXPECT_DOUBLE_EQ(mesh.lumped_mass(2), 0.5);
  EXPECT_NEAR(mass_sum(mesh), 2.0, 1e-12);
  EXPECT_DOUBLE_EQ(mesh.centroid()[0], 1.0);

  ASSERT_EQ(mesh.boundary().size(), 2u);
  EXPECT_EQ(mesh.boundary()[0].node, 0u);
  EXPECT_EQ(mesh.boundary()[0].normal[0], -1.0);
  EXPECT_EQ(mesh.boundary()[1].node, 4u);
  EXPECT_EQ(mesh.boundary()[1].normal[0], 1.0);
  for (const auto& f : mesh.boundary()) EXPECT_EQ(f.measure, 1.0);
}

TEST(Mesh, LumpedMassesSumToMeasure) {
  for (std::size_t n : {2u, 3u, 17u, 101u}) {
    EXPECT_NEAR(mass_sum(Mesh::interval(0.7, n)), 0.7, 1e-12);
    EXPECT_NEAR(mass_sum(Mesh::rectangle(1.3, 0.4, n, n + 2)), 1.3 * 0.4, 1e-12);
  }
}

TEST(Mesh, RectangleBoundaryNormalsAndMeasures) {
  const Mesh mesh = Mesh::rectangle(2.0, 1.0, 5, 3);
  EXPECT_EQ(mesh.dimension(), 2);
  EXPECT_EQ(mesh.node_count(), 15u);
  EXPECT_EQ(mesh.element_count(), 8u);
  EXPECT_DOUBLE_EQ(mesh.element_measure(), 0.25);
  EXPECT_DOUBLE_EQ(mesh.coord(1 + 5 * 2)[0], 0.5);
  EXPECT_DOUBLE_EQ(mesh.coord(1 + 5 * 2)[1], 1.0);

  std::array<double, 4> side_measure{};
  for (const auto& f : mesh.boundary()) {
    EXPECT_NEAR(std::hypot(f.normal[0], f.normal[1]), 1.0, 1e-15);
    side_measure[static_cast<int>(f.side)] += f.measure;
    const auto& x = mesh.coord(f.node);
    switch (f.side) {
      case Side::left: EXPECT_EQ(x[0], 0.0); EXPECT_EQ(f.normal[0], -1.0); break;
      case Side::right: EXPECT_EQ(x[0], 2.0); EXPECT_EQ(f.normal[0], 1.0); break;
      case Side::bottom: EXPECT_EQ(x[1], 0.0); EXPECT_EQ(f.normal[1], -1.0); break;
      case Side::top: EXPECT_EQ(x[1], 1.0); EXPECT_EQ(f.normal[1], 1.0); break;
    }
  }
  EXPECT_NEAR(side_measure[0], 1.0, 1e-14);
  EXPECT_NEAR(side_measure[1], 1.0, 1e-14);
  EXPECT_NEAR(side_measure[2], 2.0, 1e-14);
  EXPECT_NEAR(side_measure[3], 2.0, 1e-14);
  // Corners sit on two sides.
  EXPECT_EQ(mesh.boundary().size(), 2u * 3u + 2u * 5u);
}

TEST(Mesh, QuadratureIntegratesBilinearGradientsExactly) {
  const Mesh mesh = Mesh::rectangle(1.0, 2.0, 4, 3);
  // u = 1 + 2x - 3y + xy: the gradient (2 + y, -3 + x) is reproduced exactly.
  std::vector<double> u(mesh.node_count());
  for (std::size_t n = 0; n < u.size(); ++n) {
    const auto& x = mesh.coord(n);
    u[n] = 1.0 + 2.0 * x[0] - 3.0 * x[1] + x[0] * x[1];
  }
  double weight_sum = 0.0;
  for (std::size_t e = 0; e < mesh.element_count(); ++e) {
    for (const auto& q : mesh.quadrature()) {
      const Point x = mesh.quadrature_position(e, q);
      const Point g = mesh.gradient_at(e, q, u);
      EXPECT_NEAR(g[0], 2.0 + x[1], 1e-12);
      EXPECT_NEAR(g[1], -3.0 + x[0], 1e-12);
      weight_sum += q.weight;
    }
  }
  EXPECT_NEAR(weight_sum, 2.0, 1e-12);
}

TEST(Mesh, CsvDumps) {
  const Mesh mesh = Mesh::rectangle(1.0, 1.0, 2, 2);
  std::ostringstream nodes, conn;
  mesh.write_nodes_csv(nodes);
  mesh.write_connectivity_csv(conn);
  std::istringstream node_lines(nodes.str());
  std::string line;
  std::size_t rows = 0;
  while (std::getline(node_lines, line)) ++rows;
  EXPECT_EQ(rows, 1u + 4u);
  EXPECT_NE(conn.str().find("0,1,3,2"), std::string::npos);
}

TEST(Mesh, RejectsDegenerateInput) {
  EXPECT_THROW(Mesh::interval(1.0, 1), InvalidScenario);
  EXPECT_THROW(Mesh::interval(0.0, 4), InvalidScenario);
  EXPECT_THROW(Mesh::rectangle(1.0, -1.0, 3, 3), InvalidScenario);
  EXPECT_THROW(Mesh::rectangle(1.0, 1.0, 3, 1), InvalidScenario);
}
