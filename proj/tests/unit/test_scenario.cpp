#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "porohyst/compatibility.hpp"
#include "porohyst/errors.hpp"
#include "porohyst/scenario.hpp"
#include "scenarios.hpp"

using namespace porohyst;
namespace pt = porohyst::testing;

namespace {

std::string invalid_field(const std::string& text) {
  try {
    parse_scenario(text);
  } catch (const InvalidScenario& e) {
    return e.field();
  }
  return "<accepted>";
}

}  // namespace

TEST(ScenarioParse, EmptyDocumentGivesDefaults) {
  const Scenario s = parse_scenario("{}");
  EXPECT_EQ(s, Scenario{});
  EXPECT_EQ(s.mesh.nodes, std::vector<std::size_t>{33});
  EXPECT_EQ(s.thresholds, 64u);
  EXPECT_EQ(s.stepper.steps(), 100u);
  EXPECT_EQ(s.v0, s.u0);
  EXPECT_EQ(s.transform(0.7), 0.7);
}

TEST(ScenarioParse, DefaultsApplyPerDimension) {
  const Scenario s = parse_scenario(R"({"mesh": {"dimension": 2}})");
  EXPECT_EQ(s.mesh.extent, (std::vector<double>{1.0, 1.0}));
  EXPECT_EQ(s.mesh.nodes, (std::vector<std::size_t>{33, 33}));
}

TEST(ScenarioParse, NamedInvariantErrors) {
  EXPECT_EQ(invalid_field(R"({"boundary": {"bstar": {"left": -1}}})"), "boundary.bstar.left");
  EXPECT_EQ(invalid_field(R"({"boundary": {"bstar": {"top": 1}}})"), "boundary.bstar.top");
  EXPECT_EQ(invalid_field(R"({"density": {"kind": "decay", "m": 2}})"), "density.m");
  EXPECT_EQ(invalid_field(R"({"gravity": {"enabled": true, "direction": [0.5]}})"), "gravity.direction");
  EXPECT_EQ(invalid_field(R"({"kappa": {"kappa0": 2, "kappa1": 1}})"), "kappa");
  EXPECT_EQ(invalid_field(R"({"initial": {"u0": {"value": 1.5}}})"), "initial.u0");
  EXPECT_EQ(invalid_field(R"({"time": {"tau": 0.3, "T": 1}})"), "time.tau");
  EXPECT_EQ(invalid_field(R"({"time": {"T": 0}})"), "time");
  EXPECT_EQ(invalid_field(R"({"mesh": {"nodes": [1]}})"), "mesh.nodes");
  EXPECT_EQ(invalid_field(R"({"density": {"kind": "decay", "m": 3, "phi0": 1, "range_condition": true}})"),
            "density.range_condition");
  EXPECT_EQ(invalid_field(R"({"solver": {"line_search_shrink": 1.0}})"), "solver.line_search_shrink");
  EXPECT_EQ(invalid_field(R"({"transform": {"kind": "polynomial", "coefficients": [0.1, 1]}})"), "transform");
}

TEST(ScenarioParse, UnknownKeysAreRejectedWithTheirPath) {
  EXPECT_EQ(invalid_field(R"({"meshes": {}})"), "meshes");
  EXPECT_EQ(invalid_field(R"({"density": {"kind": "decay", "phi_0": 1}})"), "density.phi_0");
  EXPECT_EQ(invalid_field(R"({"boundary": {"ustar": {"kind": "constant", "t": [0]}}})"), "boundary.ustar.t");
}

TEST(ScenarioParse, MalformedJsonReportsLine) {
  try {
    parse_scenario("{\n  \"mesh\": {\n    \"dimension\": 1,,\n  }\n}\n");
    FAIL() << "malformed document accepted";
  } catch (const ScenarioParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(ScenarioLoad, MissingFileIsAnError) {
  EXPECT_THROW(load_scenario("/nonexistent/scenario.json"), InvalidScenario);
}

TEST(ScenarioLoad, ReferenceLoadsAndIsCompatible) {
  const Scenario s = pt::reference_scenario();
  EXPECT_EQ(s.mesh.nodes, std::vector<std::size_t>{64});
  EXPECT_TRUE(s.gravity.enabled);
  EXPECT_NO_THROW(validate_scenario(s));
  EXPECT_TRUE(validate_compatibility(Problem(s)).ok());
}

TEST(ScenarioRoundTrip, SerializeThenParseIsIdentity) {
  std::vector<Scenario> cases{Scenario{}, pt::reference_scenario(), pt::plane_scenario(), pt::linear_scenario()};

  Scenario rich = pt::plane_scenario();
  rich.density.kind = TabulatedDensity({0.0, 0.5, 1.0}, {-1.0, 0.0, 1.0},
                                       {0.1, 0.2, 0.3, 0.2, 0.4, 0.2, 0.1, 0.1, 0.0});
  rich.density.modulation = {ModulationSpec::Kind::linear, 0.8, {0.1, 0.2}, {}};
  rich.transform = Transform::polynomial({0.0, 1.0, 0.0, 0.1});
  rich.kappa = {0.5, 1.5, 2.0, 0.5, {0.2, 0.4}};
  rich.boundary.ustar = {ExteriorPressureSpec::Kind::table, 0.0, {0.0, 0.1, 0.2}, {0.1, 0.3, 0.2}};
  rich.u0 = {InitialFieldSpec::Kind::nodal, 0.0, {}, std::vector<double>(54, 0.25)};
  rich.memory.kind = MemorySpec::Kind::table;
  rich.memory.xi = MemoryState(54, rich.thresholds, 0.0);
  rich.memory.xi->at(3, 0) = 1.0 / 3.0;
  rich.stepper.retry_halving = true;
  rich.output = {"elsewhere", 3, 7};
  cases.push_back(rich);

  Scenario table_g = pt::reference_scenario();
  table_g.transform = Transform::table({-2.0, 0.0, 2.0}, {-1.5, 0.0, 2.5});
  table_g.density.modulation = {ModulationSpec::Kind::nodal, 1.0, {}, std::vector<double>(64, 0.9)};
  cases.push_back(table_g);

  for (const Scenario& s : cases) {
    const std::string text = serialize_scenario(s);
    const Scenario back = parse_scenario(text);
    EXPECT_EQ(back, s) << text;
    EXPECT_EQ(serialize_scenario(back), text);
  }
}

TEST(ScenarioLoad, RelativeFilesResolveAgainstScenarioDirectory) {
  const auto dir = std::filesystem::temp_directory_path() / "porohyst_scenario_test";
  std::filesystem::create_directories(dir);
  {
    std::ofstream table(dir / "phi.csv");
    table << "r,v,phi\n0,-1,1\n0,1,1\n1,-1,1\n1,1,1\n";
    std::ofstream doc(dir / "s.json");
    doc << R"({"density": {"kind": "tabulated", "file": "phi.csv", "g_bar": 0.5}})";
  }
  const Scenario s = load_scenario(dir / "s.json");
  ASSERT_TRUE(std::holds_alternative<TabulatedDensity>(s.density.kind));
  EXPECT_EQ(std::get<TabulatedDensity>(s.density.kind).values().size(), 4u);
  std::filesystem::remove_all(dir);
}

TEST(ExteriorPressure, TableInterpolatesAndHoldsEnds) {
  const ExteriorPressureSpec spec{ExteriorPressureSpec::Kind::table, 0.0, {0.0, 1.0, 2.0}, {1.0, 3.0, 2.0}};
  EXPECT_EQ(spec.at(-1.0), 1.0);
  EXPECT_DOUBLE_EQ(spec.at(0.25), 1.5);
  EXPECT_DOUBLE_EQ(spec.at(1.5), 2.5);
  EXPECT_EQ(spec.at(5.0), 2.0);
  EXPECT_EQ(spec.sup_abs(), 3.0);
}

TEST(Kappa, MonotoneInSaturationAndBounded) {
  const KappaSpec k{0.2, 1.0, 2.0, 1.0, {}};
  EXPECT_DOUBLE_EQ(k.value({0.3, 0.0}, -0.5), 0.2);
  EXPECT_DOUBLE_EQ(k.value({0.3, 0.0}, 0.5), 0.2 + 0.8 * 0.25);
  EXPECT_DOUBLE_EQ(k.value({0.3, 0.0}, 2.0), 1.0);
}
