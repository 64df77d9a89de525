#include "scenarios.hpp"

namespace porohyst::testing {

std::string scenario_path(const std::string& name) { return std::string(POROHYST_SCENARIO_DIR) + "/" + name; }

Scenario reference_scenario() { return load_scenario(scenario_path("reference.json")); }

Scenario closed_gravity_scenario() {
  Scenario s = reference_scenario();
  s.boundary.bstar = {0.0, 0.0, 0.0, 0.0};
  s.u0 = {InitialFieldSpec::Kind::linear, 0.2, {0.4}, {}};
  s.v0 = {InitialFieldSpec::Kind::constant, 0.1, {}, {}};
  return s;
}

Scenario closed_gravity_free_scenario() {
  Scenario s = closed_gravity_scenario();
  s.gravity = GravitySpec{};
  s.u0 = {InitialFieldSpec::Kind::linear, -0.3, {0.6}, {}};
  s.v0 = {InitialFieldSpec::Kind::constant, 0.0, {}, {}};
  return s;
}

Scenario linear_scenario() {
  Scenario s = reference_scenario();
  s.density.kind = UniformBoxDensity{0.0, 1.0, -1.0, 1.0, 0.0};
  s.density.range_condition = false;
  s.kappa = KappaSpec{};
  return s;
}

Scenario plane_scenario() {
  Scenario s = reference_scenario();
  s.mesh = {2, {1.0, 0.5}, {9, 6}};
  s.gravity = {true, {0.0, -1.0}};
  s.boundary.bstar = {0.0, 0.0, 0.0, 1.0};
  s.boundary.ustar = {ExteriorPressureSpec::Kind::constant, 0.3, {}, {}};
  s.u0 = {InitialFieldSpec::Kind::linear, 0.2, {0.0, 1.0}, {}};
  s.v0 = s.u0;
  s.stepper.T = 0.2;
  s.stepper.tau = 0.02;
  return s;
}

std::vector<Scenario> scenario_matrix() {
  std::vector<Scenario> out{reference_scenario(), closed_gravity_scenario(),
                            closed_gravity_free_scenario(), plane_scenario()};
  Scenario cubic = reference_scenario();
  cubic.transform = Transform::polynomial({0.0, 1.0, 0.0, 0.2});
  cubic.stepper.T = 0.3;
  out.push_back(cubic);
  Scenario table = plane_scenario();
  table.density.kind = TabulatedDensity({0.0, 0.5, 2.0}, {-2.0, 0.0, 2.0},
                                        {0.1, 0.6, 0.1, 0.2, 0.3, 0.2, 0.0, 0.1, 0.0});
  table.density.range_condition = false;
  table.kappa = {0.2, 1.0, 2.0, 1.0, {}};
  out.push_back(table);
  return out;
}

}  // namespace porohyst::testing
