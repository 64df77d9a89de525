#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "porohyst/density.hpp"
#include "porohyst/field.hpp"
#include "porohyst/memory_state.hpp"
#include "porohyst/mesh.hpp"
#include "porohyst/threshold_grid.hpp"
#include "porohyst/transform.hpp"

namespace porohyst {

struct MeshSpec {
  int dimension = 1;
  std::vector<double> extent{1.0};
  std::vector<std::size_t> nodes{33};
  friend bool operator==(const MeshSpec&, const MeshSpec&) = default;
};

/// Separable spatial factor m(x) of the Preisach density.
struct ModulationSpec {
  enum class Kind { none, linear, nodal };
  Kind kind = Kind::none;
  double base = 1.0;              // linear: m(x) = base + gradient . x
  std::vector<double> gradient;
  std::vector<double> values;     // nodal
  friend bool operator==(const ModulationSpec&, const ModulationSpec&) = default;
};

struct DensitySpec {
  DensityKind kind = UniformBoxDensity{};
  double g_bar = 0.5;
  ModulationSpec modulation;
  // Require upper mass <= 1 - g_bar and lower mass <= g_bar, so theta stays in [0, 1].
  bool range_condition = false;
  friend bool operator==(const DensitySpec&, const DensitySpec&) = default;
};

/// kappa(x, theta) = kappa0 + (kappa1 - kappa0) s(x) clamp(theta, 0, 1)^exponent
/// with s(x) = x_base + x_gradient . x required to lie in [0, 1] on the domain.
struct KappaSpec {
  double kappa0 = 1.0;
  double kappa1 = 1.0;
  double exponent = 1.0;
  double x_base = 1.0;
  std::vector<double> x_gradient;
  double value(const Point& x, double theta) const;
  friend bool operator==(const KappaSpec&, const KappaSpec&) = default;
};

struct GravitySpec {
  bool enabled = false;
  std::vector<double> direction;
  Point nu() const;
  friend bool operator==(const GravitySpec&, const GravitySpec&) = default;
};

/// Exterior pressure u*(t): a constant or a piecewise-linear table held
/// constant beyond its ends.
struct ExteriorPressureSpec {
  enum class Kind { constant, table };
  Kind kind = Kind::constant;
  double value = 0.0;
  std::vector<double> t;
  std::vector<double> values;
  double at(double time) const;
  double sup_abs() const;
  friend bool operator==(const ExteriorPressureSpec&, const ExteriorPressureSpec&) = default;
};

struct BoundarySpec {
  std::array<double, 4> bstar{};  // indexed by Side
  ExteriorPressureSpec ustar;
  friend bool operator==(const BoundarySpec&, const BoundarySpec&) = default;
};

struct InitialFieldSpec {
  enum class Kind { constant, linear, nodal };
  Kind kind = Kind::constant;
  double value = 0.0;              // constant, or linear offset
  std::vector<double> gradient;    // linear: value + gradient . x
  std::vector<double> values;      // nodal
  Field evaluate(const Mesh& mesh) const;
  friend bool operator==(const InitialFieldSpec&, const InitialFieldSpec&) = default;
};

struct MemorySpec {
  enum class Kind { virgin, table };
  Kind kind = Kind::virgin;
  std::optional<MemoryState> xi;  // table: loaded play states, one row per node
  friend bool operator==(const MemorySpec&, const MemorySpec&) = default;
};

struct StepperConfig {
  double tau = 0.01;
  double T = 1.0;
  double newton_tol = 1e-10;
  std::size_t newton_max_iter = 50;
  double line_search_shrink = 0.5;
  bool picard_fallback = true;
  std::size_t picard_max_iter = 2000;
  double fd_step = 1e-6;
  // Halve tau for a failed step (at most max_halvings times), then resume the nominal tau.
  bool retry_halving = false;
  std::size_t max_halvings = 4;

  /// n = T / tau; throws InvalidScenario unless it is an integer.
  std::size_t steps() const;
  friend bool operator==(const StepperConfig&, const StepperConfig&) = default;
};

struct OutputSpec {
  std::string directory = "out";
  std::size_t snapshot_every = 0;    // 0 disables snapshots
  std::size_t checkpoint_every = 0;  // 0 disables checkpoints
  friend bool operator==(const OutputSpec&, const OutputSpec&) = default;
};

struct Scenario {
  MeshSpec mesh;
  double Lambda = 1.0;
  std::size_t thresholds = 64;
  DensitySpec density;
  Transform transform;
  KappaSpec kappa;
  GravitySpec gravity;
  BoundarySpec boundary;
  InitialFieldSpec u0;
  InitialFieldSpec v0;
  MemorySpec memory;
  StepperConfig stepper;
  OutputSpec output;
  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Parses a JSON scenario document. Relative file references (tabulated
/// density, memory table) resolve against `base_dir`. Throws
/// ScenarioParseError for malformed text and InvalidScenario (naming the
/// dotted key) for unknown keys, wrong types or violated invariants.
Scenario parse_scenario(std::string_view text, const std::filesystem::path& base_dir = {});
Scenario load_scenario(const std::filesystem::path& path);

/// JSON rendering with all referenced data inlined; parse_scenario of the
/// result reproduces an equal Scenario.
std::string serialize_scenario(const Scenario& scenario);

/// Throws InvalidScenario for the first violated invariant.
void validate_scenario(const Scenario& scenario);

/// Scenario compiled against its mesh: everything the stepper evaluates.
class Problem {
 public:
  explicit Problem(Scenario scenario);

  const Scenario& scenario() const noexcept { return scenario_; }
  const Mesh& mesh() const noexcept { return mesh_; }
  const ThresholdGrid& grid() const noexcept { return grid_; }
  const PreisachDensity& density() const noexcept { return density_; }
  const Transform& transform() const noexcept { return scenario_.transform; }
  const StepperConfig& stepper() const noexcept { return scenario_.stepper; }
  // Zero vector when gravity is off.
  const Point& nu() const noexcept { return nu_; }
  const Point& reference_point() const noexcept { return x0_; }
  // nu . (x - x0) per node: the gravity potential.
  const std::vector<double>& gravity_potential() const noexcept { return gravity_potential_; }
  double bstar(const BoundaryFacet& facet) const { return scenario_.boundary.bstar[static_cast<int>(facet.side)]; }
  double ustar(double t) const { return scenario_.boundary.ustar.at(t); }
  double kappa(const Point& x, double theta) const { return scenario_.kappa.value(x, theta); }
  bool has_boundary_exchange() const noexcept;

  const Field& u0() const noexcept { return u0_; }
  const Field& v0() const noexcept { return v0_; }
  // Play input g(u0).
  const Field& w0() const noexcept { return w0_; }
  const MemoryState& initial_memory() const noexcept { return memory0_; }

 private:
  Scenario scenario_;
  Mesh mesh_;
  ThresholdGrid grid_;
  PreisachDensity density_;
  Point nu_{0.0, 0.0};
  Point x0_{0.0, 0.0};
  std::vector<double> gravity_potential_;
  Field u0_;
  Field v0_;
  Field w0_;
  MemoryState memory0_;
};

}  // namespace porohyst
