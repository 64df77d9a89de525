#include "porohyst/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <nlohmann/json.hpp>
#include <sstream>

#include "porohyst/csv.hpp"
#include "porohyst/errors.hpp"
#include "porohyst/initial_memory.hpp"

namespace porohyst {

using nlohmann::json;

// ---- scenario field helpers ----------------------------------------------

double KappaSpec::value(const Point& x, double theta) const {
  double s = x_base;
  for (std::size_t d = 0; d < x_gradient.size(); ++d) s += x_gradient[d] * x[d];
  const double t = std::clamp(theta, 0.0, 1.0);
  return kappa0 + (kappa1 - kappa0) * s * std::pow(t, exponent);
}

Point GravitySpec::nu() const {
  Point out{0.0, 0.0};
  if (!enabled) return out;
  for (std::size_t d = 0; d < direction.size() && d < 2; ++d) out[d] = direction[d];
  return out;
}

double ExteriorPressureSpec::at(double time) const {
  if (kind == Kind::constant) return value;
  if (time <= t.front()) return values.front();
  if (time >= t.back()) return values.back();
  const auto it = std::upper_bound(t.begin(), t.end(), time);
  const std::size_t i = static_cast<std::size_t>(it - t.begin()) - 1;
  const double s = (time - t[i]) / (t[i + 1] - t[i]);
  return values[i] + s * (values[i + 1] - values[i]);
}

double ExteriorPressureSpec::sup_abs() const {
  if (kind == Kind::constant) return std::abs(value);
  double sup = 0.0;
  for (double x : values) sup = std::max(sup, std::abs(x));
  return sup;
}

Field InitialFieldSpec::evaluate(const Mesh& mesh) const {
  Field out(mesh.node_count(), value);
  if (kind == Kind::nodal) return Field(values);
  if (kind == Kind::linear) {
    for (std::size_t n = 0; n < mesh.node_count(); ++n) {
      for (std::size_t d = 0; d < gradient.size(); ++d) out[n] += gradient[d] * mesh.coord(n)[d];
    }
  }
  return out;
}

std::size_t StepperConfig::steps() const {
  if (!(tau > 0.0) || !(T > 0.0) || !std::isfinite(tau) || !std::isfinite(T)) {
    throw InvalidScenario("time", "tau and T must be positive and finite");
  }
  if (tau > T * (1.0 + 1e-12)) throw InvalidScenario("time.tau", "tau must not exceed T");
  const double ratio = T / tau;
  const double n = std::round(ratio);
  if (std::abs(ratio - n) > 1e-9 * n) throw InvalidScenario("time.tau", "T / tau must be an integer");
  return static_cast<std::size_t>(n);
}

// ---- JSON reading --------------------------------------------------------

namespace {

constexpr std::array<const char*, 4> kSideNames{"left", "right", "bottom", "top"};

/// Typed access to one JSON object that remembers its dotted path and
/// rejects keys that were never requested.
class Reader {
 public:
  Reader(const json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) throw InvalidScenario(path_.empty() ? "<root>" : path_, "expected an object");
  }

  std::string key_path(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  bool has(const std::string& key) {
    seen_.push_back(key);
    return node_.contains(key);
  }

  const json& raw(const std::string& key) {
    seen_.push_back(key);
    return node_.at(key);
  }

  Reader object(const std::string& key) {
    static const json empty = json::object();
    return has(key) ? Reader(node_.at(key), key_path(key)) : Reader(empty, key_path(key));
  }

  double number(const std::string& key, double fallback) {
    if (!has(key)) return fallback;
    return as_number(node_.at(key), key_path(key));
  }

  std::size_t count(const std::string& key, std::size_t fallback) {
    if (!has(key)) return fallback;
    const json& v = node_.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0) {
      throw InvalidScenario(key_path(key), "expected a nonnegative integer");
    }
    return v.get<std::size_t>();
  }

  bool boolean(const std::string& key, bool fallback) {
    if (!has(key)) return fallback;
    const json& v = node_.at(key);
    if (!v.is_boolean()) throw InvalidScenario(key_path(key), "expected true or false");
    return v.get<bool>();
  }

  std::string text(const std::string& key, const std::string& fallback) {
    if (!has(key)) return fallback;
    const json& v = node_.at(key);
    if (!v.is_string()) throw InvalidScenario(key_path(key), "expected a string");
    return v.get<std::string>();
  }

  std::vector<double> numbers(const std::string& key, std::vector<double> fallback) {
    if (!has(key)) return fallback;
    return as_numbers(node_.at(key), key_path(key));
  }

  std::vector<std::size_t> counts(const std::string& key, std::vector<std::size_t> fallback) {
    if (!has(key)) return fallback;
    const json& v = node_.at(key);
    if (!v.is_array()) throw InvalidScenario(key_path(key), "expected an array of integers");
    std::vector<std::size_t> out;
    for (const json& x : v) {
      if (!x.is_number_integer() || x.get<long long>() < 0) {
        throw InvalidScenario(key_path(key), "expected an array of nonnegative integers");
      }
      out.push_back(x.get<std::size_t>());
    }
    return out;
  }

  /// Throws InvalidScenario for any key that was not read.
  void finish() const {
    for (auto it = node_.begin(); it != node_.end(); ++it) {
      if (std::find(seen_.begin(), seen_.end(), it.key()) == seen_.end()) {
        throw InvalidScenario(key_path(it.key()), "unknown key");
      }
    }
  }

  static double as_number(const json& v, const std::string& path) {
    if (!v.is_number()) throw InvalidScenario(path, "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw InvalidScenario(path, "must be finite");
    return x;
  }

  static std::vector<double> as_numbers(const json& v, const std::string& path) {
    if (!v.is_array()) throw InvalidScenario(path, "expected an array of numbers");
    std::vector<double> out;
    out.reserve(v.size());
    for (const json& x : v) out.push_back(as_number(x, path));
    return out;
  }

 private:
  const json& node_;
  std::string path_;
  std::vector<std::string> seen_;
};

std::size_t line_of_offset(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& file) {
  const std::filesystem::path p(file);
  return p.is_absolute() || base.empty() ? p : base / p;
}

DensitySpec read_density(Reader r, const std::filesystem::path& base) {
  DensitySpec spec;
  const std::string kind = r.text("kind", "uniform-box");
  if (kind == "uniform-box") {
    UniformBoxDensity box;
    box.r_lo = r.number("r_lo", box.r_lo);
    box.r_hi = r.number("r_hi", box.r_hi);
    box.v_lo = r.number("v_lo", box.v_lo);
    box.v_hi = r.number("v_hi", box.v_hi);
    box.height = r.number("height", box.height);
    spec.kind = box;
  } else if (kind == "decay") {
    DecayDensity decay;
    decay.m = r.number("m", decay.m);
    decay.phi0 = r.number("phi0", decay.phi0);
    spec.kind = decay;
  } else if (kind == "tabulated") {
    const bool inline_table = r.has("table");
    const bool file_table = r.has("file");
    if (inline_table == file_table) {
      throw InvalidScenario(r.key_path("table"), "tabulated density needs exactly one of 'table' or 'file'");
    }
    if (file_table) {
      spec.kind = load_tabulated_density(resolve(base, r.text("file", "")));
    } else {
      Reader t = r.object("table");
      auto rv = t.numbers("r", {});
      auto vv = t.numbers("v", {});
      auto phi = t.numbers("phi", {});
      t.finish();
      spec.kind = TabulatedDensity(std::move(rv), std::move(vv), std::move(phi));
    }
  } else {
    throw InvalidScenario(r.key_path("kind"), "expected uniform-box, decay or tabulated, got '" + kind + "'");
  }
  spec.g_bar = r.number("g_bar", spec.g_bar);
  spec.range_condition = r.boolean("range_condition", spec.range_condition);
  if (r.has("modulation")) {
    Reader m = r.object("modulation");
    const std::string mk = m.text("kind", "none");
    if (mk == "none") {
      spec.modulation.kind = ModulationSpec::Kind::none;
    } else if (mk == "linear") {
      spec.modulation.kind = ModulationSpec::Kind::linear;
      spec.modulation.base = m.number("base", 1.0);
      spec.modulation.gradient = m.numbers("gradient", {});
    } else if (mk == "nodal") {
      spec.modulation.kind = ModulationSpec::Kind::nodal;
      spec.modulation.values = m.numbers("values", {});
    } else {
      throw InvalidScenario(m.key_path("kind"), "expected none, linear or nodal");
    }
    m.finish();
  }
  r.finish();
  return spec;
}

Transform read_transform(Reader r) {
  const std::string kind = r.text("kind", "identity");
  Transform out;
  try {
    if (kind == "identity") {
      out = Transform::identity();
    } else if (kind == "polynomial") {
      out = Transform::polynomial(r.numbers("coefficients", {}));
    } else if (kind == "table") {
      auto u = r.numbers("u", {});
      out = Transform::table(std::move(u), r.numbers("g", {}));
    } else {
      throw InvalidScenario(r.key_path("kind"), "expected identity, polynomial or table");
    }
  } catch (const InvalidTransform& e) {
    throw InvalidScenario(r.key_path("kind"), e.what());
  }
  r.finish();
  return out;
}

InitialFieldSpec read_initial_field(Reader r) {
  InitialFieldSpec spec;
  const std::string kind = r.text("kind", "constant");
  if (kind == "constant") {
    spec.kind = InitialFieldSpec::Kind::constant;
    spec.value = r.number("value", 0.0);
  } else if (kind == "linear") {
    spec.kind = InitialFieldSpec::Kind::linear;
    spec.value = r.number("value", 0.0);
    spec.gradient = r.numbers("gradient", {});
  } else if (kind == "nodal") {
    spec.kind = InitialFieldSpec::Kind::nodal;
    spec.values = r.numbers("values", {});
  } else {
    throw InvalidScenario(r.key_path("kind"), "expected constant, linear or nodal");
  }
  r.finish();
  return spec;
}

MemorySpec read_memory(Reader r, const Scenario& s, const std::filesystem::path& base) {
  MemorySpec spec;
  const std::string kind = r.text("kind", "virgin");
  if (kind == "virgin") {
    spec.kind = MemorySpec::Kind::virgin;
  } else if (kind == "table") {
    spec.kind = MemorySpec::Kind::table;
    const bool has_file = r.has("file");
    const bool has_xi = r.has("xi");
    if (has_file == has_xi) throw InvalidScenario(r.key_path("xi"), "memory table needs exactly one of 'file' or 'xi'");
    if (!(s.Lambda > 0.0) || s.thresholds == 0) throw InvalidScenario("thresholds", "invalid threshold grid");
    const ThresholdGrid grid(s.Lambda, s.thresholds);
    if (has_file) {
      spec.xi = load_memory(resolve(base, r.text("file", "")), grid);
    } else {
      const json& rows = r.raw("xi");
      if (!rows.is_array() || rows.empty()) throw InvalidScenario(r.key_path("xi"), "expected an array of rows");
      MemoryState xi(rows.size(), grid.size());
      for (std::size_t n = 0; n < rows.size(); ++n) {
        const auto row = Reader::as_numbers(rows[n], r.key_path("xi"));
        if (row.size() != grid.size()) {
          throw InvalidScenario(r.key_path("xi"), "row " + std::to_string(n) + " does not have one value per threshold");
        }
        std::copy(row.begin(), row.end(), xi.row(n).begin());
      }
      spec.xi = std::move(xi);
    }
  } else {
    throw InvalidScenario(r.key_path("kind"), "expected virgin or table");
  }
  r.finish();
  return spec;
}

// ---- JSON writing --------------------------------------------------------

json write_initial_field(const InitialFieldSpec& f) {
  switch (f.kind) {
    case InitialFieldSpec::Kind::constant: return {{"kind", "constant"}, {"value", f.value}};
    case InitialFieldSpec::Kind::linear: return {{"kind", "linear"}, {"value", f.value}, {"gradient", f.gradient}};
    case InitialFieldSpec::Kind::nodal: return {{"kind", "nodal"}, {"values", f.values}};
  }
  return {};
}

json write_density(const DensitySpec& d) {
  json out = std::visit(
      [](const auto& k) -> json {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, UniformBoxDensity>) {
          return {{"kind", "uniform-box"}, {"r_lo", k.r_lo}, {"r_hi", k.r_hi},
                  {"v_lo", k.v_lo},        {"v_hi", k.v_hi}, {"height", k.height}};
        } else if constexpr (std::is_same_v<K, DecayDensity>) {
          return {{"kind", "decay"}, {"m", k.m}, {"phi0", k.phi0}};
        } else {
          return {{"kind", "tabulated"}, {"table", {{"r", k.r_grid()}, {"v", k.v_grid()}, {"phi", k.values()}}}};
        }
      },
      d.kind);
  out["g_bar"] = d.g_bar;
  out["range_condition"] = d.range_condition;
  switch (d.modulation.kind) {
    case ModulationSpec::Kind::none: out["modulation"] = {{"kind", "none"}}; break;
    case ModulationSpec::Kind::linear:
      out["modulation"] = {{"kind", "linear"}, {"base", d.modulation.base}, {"gradient", d.modulation.gradient}};
      break;
    case ModulationSpec::Kind::nodal: out["modulation"] = {{"kind", "nodal"}, {"values", d.modulation.values}}; break;
  }
  return out;
}

json write_transform(const Transform& g) {
  switch (g.kind()) {
    case Transform::Kind::identity: return {{"kind", "identity"}};
    case Transform::Kind::polynomial: return {{"kind", "polynomial"}, {"coefficients", g.coefficients()}};
    case Transform::Kind::table: return {{"kind", "table"}, {"u", g.table_u()}, {"g", g.table_g()}};
  }
  return {};
}

}  // namespace

Scenario parse_scenario(std::string_view text, const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ScenarioParseError(line_of_offset(text, e.byte == 0 ? 0 : e.byte - 1), e.what());
  }

  Scenario s;
  Reader root(doc, "");
  {
    Reader m = root.object("mesh");
    s.mesh.dimension = static_cast<int>(m.count("dimension", 1));
    const std::vector<double> default_extent(static_cast<std::size_t>(std::max(s.mesh.dimension, 1)), 1.0);
    const std::vector<std::size_t> default_nodes(static_cast<std::size_t>(std::max(s.mesh.dimension, 1)), 33);
    s.mesh.extent = m.numbers("extent", default_extent);
    s.mesh.nodes = m.counts("nodes", default_nodes);
    m.finish();
  }
  {
    Reader t = root.object("thresholds");
    s.Lambda = t.number("Lambda", s.Lambda);
    s.thresholds = t.count("count", s.thresholds);
    t.finish();
  }
  s.density = read_density(root.object("density"), base_dir);
  s.transform = read_transform(root.object("transform"));
  {
    Reader k = root.object("kappa");
    s.kappa.kappa0 = k.number("kappa0", s.kappa.kappa0);
    s.kappa.kappa1 = k.number("kappa1", s.kappa.kappa1);
    s.kappa.exponent = k.number("exponent", s.kappa.exponent);
    s.kappa.x_base = k.number("x_base", s.kappa.x_base);
    s.kappa.x_gradient = k.numbers("x_gradient", {});
    k.finish();
  }
  {
    Reader g = root.object("gravity");
    s.gravity.enabled = g.boolean("enabled", false);
    s.gravity.direction = g.numbers("direction", {});
    g.finish();
  }
  {
    Reader b = root.object("boundary");
    {
      Reader bs = b.object("bstar");
      for (std::size_t i = 0; i < kSideNames.size(); ++i) s.boundary.bstar[i] = bs.number(kSideNames[i], 0.0);
      bs.finish();
    }
    {
      Reader u = b.object("ustar");
      const std::string kind = u.text("kind", "constant");
      if (kind == "constant") {
        s.boundary.ustar.kind = ExteriorPressureSpec::Kind::constant;
        s.boundary.ustar.value = u.number("value", 0.0);
      } else if (kind == "table") {
        s.boundary.ustar.kind = ExteriorPressureSpec::Kind::table;
        s.boundary.ustar.t = u.numbers("t", {});
        s.boundary.ustar.values = u.numbers("values", {});
      } else {
        throw InvalidScenario(u.key_path("kind"), "expected constant or table");
      }
      u.finish();
    }
    b.finish();
  }
  {
    Reader init = root.object("initial");
    s.u0 = read_initial_field(init.object("u0"));
    s.v0 = init.has("v0") ? read_initial_field(init.object("v0")) : s.u0;
    init.finish();
  }
  s.memory = read_memory(root.object("memory"), s, base_dir);
  {
    Reader t = root.object("time");
    s.stepper.tau = t.number("tau", s.stepper.tau);
    s.stepper.T = t.number("T", s.stepper.T);
    t.finish();
  }
  {
    Reader c = root.object("solver");
    s.stepper.newton_tol = c.number("newton_tol", s.stepper.newton_tol);
    s.stepper.newton_max_iter = c.count("newton_max_iter", s.stepper.newton_max_iter);
    s.stepper.line_search_shrink = c.number("line_search_shrink", s.stepper.line_search_shrink);
    s.stepper.picard_fallback = c.boolean("picard_fallback", s.stepper.picard_fallback);
    s.stepper.picard_max_iter = c.count("picard_max_iter", s.stepper.picard_max_iter);
    s.stepper.fd_step = c.number("fd_step", s.stepper.fd_step);
    s.stepper.retry_halving = c.boolean("retry_halving", s.stepper.retry_halving);
    s.stepper.max_halvings = c.count("max_halvings", s.stepper.max_halvings);
    c.finish();
  }
  {
    Reader o = root.object("output");
    s.output.directory = o.text("directory", s.output.directory);
    s.output.snapshot_every = o.count("snapshot_every", s.output.snapshot_every);
    s.output.checkpoint_every = o.count("checkpoint_every", s.output.checkpoint_every);
    o.finish();
  }
  root.finish();
  validate_scenario(s);
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidScenario("", "cannot open scenario file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str(), path.parent_path());
}

std::string serialize_scenario(const Scenario& s) {
  json doc;
  doc["mesh"] = {{"dimension", s.mesh.dimension}, {"extent", s.mesh.extent}, {"nodes", s.mesh.nodes}};
  doc["thresholds"] = {{"Lambda", s.Lambda}, {"count", s.thresholds}};
  doc["density"] = write_density(s.density);
  doc["transform"] = write_transform(s.transform);
  doc["kappa"] = {{"kappa0", s.kappa.kappa0},
                  {"kappa1", s.kappa.kappa1},
                  {"exponent", s.kappa.exponent},
                  {"x_base", s.kappa.x_base},
                  {"x_gradient", s.kappa.x_gradient}};
  doc["gravity"] = {{"enabled", s.gravity.enabled}, {"direction", s.gravity.direction}};
  json bstar = json::object();
  for (std::size_t i = 0; i < kSideNames.size(); ++i) bstar[kSideNames[i]] = s.boundary.bstar[i];
  json ustar = s.boundary.ustar.kind == ExteriorPressureSpec::Kind::constant
                   ? json{{"kind", "constant"}, {"value", s.boundary.ustar.value}}
                   : json{{"kind", "table"}, {"t", s.boundary.ustar.t}, {"values", s.boundary.ustar.values}};
  doc["boundary"] = {{"bstar", bstar}, {"ustar", ustar}};
  doc["initial"] = {{"u0", write_initial_field(s.u0)}, {"v0", write_initial_field(s.v0)}};
  if (s.memory.kind == MemorySpec::Kind::virgin) {
    doc["memory"] = {{"kind", "virgin"}};
  } else {
    json rows = json::array();
    for (std::size_t n = 0; n < s.memory.xi->nodes(); ++n) {
      const auto row = s.memory.xi->row(n);
      rows.push_back(std::vector<double>(row.begin(), row.end()));
    }
    doc["memory"] = {{"kind", "table"}, {"xi", rows}};
  }
  doc["time"] = {{"tau", s.stepper.tau}, {"T", s.stepper.T}};
  doc["solver"] = {{"newton_tol", s.stepper.newton_tol},
                   {"newton_max_iter", s.stepper.newton_max_iter},
                   {"line_search_shrink", s.stepper.line_search_shrink},
                   {"picard_fallback", s.stepper.picard_fallback},
                   {"picard_max_iter", s.stepper.picard_max_iter},
                   {"fd_step", s.stepper.fd_step},
                   {"retry_halving", s.stepper.retry_halving},
                   {"max_halvings", s.stepper.max_halvings}};
  doc["output"] = {{"directory", s.output.directory},
                   {"snapshot_every", s.output.snapshot_every},
                   {"checkpoint_every", s.output.checkpoint_every}};
  return doc.dump(2) + "\n";
}

// ---- validation ----------------------------------------------------------

namespace {

std::vector<double> modulation_values(const ModulationSpec& spec, const Mesh& mesh) {
  switch (spec.kind) {
    case ModulationSpec::Kind::none: return {};
    case ModulationSpec::Kind::nodal: return spec.values;
    case ModulationSpec::Kind::linear: {
      std::vector<double> out(mesh.node_count(), spec.base);
      for (std::size_t n = 0; n < mesh.node_count(); ++n) {
        for (std::size_t d = 0; d < spec.gradient.size(); ++d) out[n] += spec.gradient[d] * mesh.coord(n)[d];
      }
      return out;
    }
  }
  return {};
}

Mesh make_mesh(const MeshSpec& spec) {
  if (spec.dimension == 1) return Mesh::interval(spec.extent.at(0), spec.nodes.at(0));
  return Mesh::rectangle(spec.extent.at(0), spec.extent.at(1), spec.nodes.at(0), spec.nodes.at(1));
}

// Extreme points of the domain: a linear function attains its range there.
std::vector<Point> domain_corners(const MeshSpec& spec) {
  if (spec.dimension == 1) return {{0.0, 0.0}, {spec.extent[0], 0.0}};
  return {{0.0, 0.0}, {spec.extent[0], 0.0}, {0.0, spec.extent[1]}, {spec.extent[0], spec.extent[1]}};
}

void require(bool condition, const std::string& field, const std::string& what) {
  if (!condition) throw InvalidScenario(field, what);
}

}  // namespace

void validate_scenario(const Scenario& s) {
  const auto dim = static_cast<std::size_t>(s.mesh.dimension);
  require(s.mesh.dimension == 1 || s.mesh.dimension == 2, "mesh.dimension", "must be 1 or 2");
  require(s.mesh.extent.size() == dim, "mesh.extent", "needs one entry per dimension");
  require(s.mesh.nodes.size() == dim, "mesh.nodes", "needs one entry per dimension");
  for (double e : s.mesh.extent) require(e > 0.0 && std::isfinite(e), "mesh.extent", "must be positive");
  for (std::size_t n : s.mesh.nodes) require(n >= 2, "mesh.nodes", "need at least 2 nodes per axis");
  const Mesh mesh = make_mesh(s.mesh);

  require(s.Lambda > 0.0 && std::isfinite(s.Lambda), "thresholds.Lambda", "must be positive");
  require(s.thresholds >= 1, "thresholds.count", "must be at least 1");

  const auto& mod = s.density.modulation;
  if (mod.kind == ModulationSpec::Kind::nodal) {
    require(mod.values.size() == mesh.node_count(), "density.modulation.values", "needs one value per node");
  }
  if (mod.kind == ModulationSpec::Kind::linear) {
    require(mod.gradient.size() <= dim, "density.modulation.gradient", "longer than the dimension");
  }
  const PreisachDensity density(s.density.kind, s.density.g_bar, modulation_values(mod, mesh));
  if (std::holds_alternative<DecayDensity>(s.density.kind)) {
    require(std::get<DecayDensity>(s.density.kind).m > 2.0, "density.m", "decay exponent must exceed 2");
  }
  if (s.density.range_condition) {
    require(s.density.g_bar > 0.0 && s.density.g_bar < 1.0, "density.g_bar", "must lie in (0, 1)");
    const auto [up, down] = density_mass(density);
    const double scale = density.max_multiplier();
    require(scale * up <= 1.0 - s.density.g_bar + 1e-12, "density.range_condition",
            "upper mass " + io::format_double(scale * up) + " exceeds 1 - g_bar");
    require(scale * down <= s.density.g_bar + 1e-12, "density.range_condition",
            "lower mass " + io::format_double(scale * down) + " exceeds g_bar");
  }

  try {
    s.transform.validate(s.Lambda);
  } catch (const InvalidTransform& e) {
    throw InvalidScenario("transform", e.what());
  }

  require(s.kappa.kappa0 > 0.0 && s.kappa.kappa1 >= s.kappa.kappa0, "kappa", "need 0 < kappa0 <= kappa1");
  require(s.kappa.exponent >= 1.0, "kappa.exponent", "must be at least 1 (Lipschitz in theta)");
  require(s.kappa.x_gradient.size() <= dim, "kappa.x_gradient", "longer than the dimension");
  for (const Point& c : domain_corners(s.mesh)) {
    double scale = s.kappa.x_base;
    for (std::size_t d = 0; d < s.kappa.x_gradient.size(); ++d) scale += s.kappa.x_gradient[d] * c[d];
    require(scale >= 0.0 && scale <= 1.0, "kappa.x_base", "spatial factor must stay in [0, 1] on the domain");
  }
  constexpr int kSamples = 11;
  for (std::size_t n = 0; n < mesh.node_count(); n += std::max<std::size_t>(1, mesh.node_count() / 16)) {
    for (int i = 0; i <= kSamples; ++i) {
      const double kv = s.kappa.value(mesh.coord(n), -0.5 + 2.0 * i / kSamples);
      require(kv >= s.kappa.kappa0 - 1e-14 && kv <= s.kappa.kappa1 + 1e-14, "kappa", "leaves [kappa0, kappa1]");
    }
  }

  if (s.gravity.enabled) {
    require(s.gravity.direction.size() == dim, "gravity.direction", "needs one entry per dimension");
    double norm2 = 0.0;
    for (double d : s.gravity.direction) norm2 += d * d;
    require(std::abs(std::sqrt(norm2) - 1.0) <= 1e-12, "gravity.direction", "must be a unit vector");
  }

  double bsum = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    require(s.boundary.bstar[i] >= 0.0 && std::isfinite(s.boundary.bstar[i]),
            std::string("boundary.bstar.") + kSideNames[i], "must be finite and nonnegative");
    if (dim == 1 && i >= 2) {
      require(s.boundary.bstar[i] == 0.0, std::string("boundary.bstar.") + kSideNames[i], "not a side of a 1D mesh");
    }
    bsum += s.boundary.bstar[i];
  }
  (void)bsum;  // b* = 0 everywhere (closed domain) or positive somewhere are both admissible
  const auto& us = s.boundary.ustar;
  if (us.kind == ExteriorPressureSpec::Kind::table) {
    require(!us.t.empty() && us.t.size() == us.values.size(), "boundary.ustar", "t and values must match");
    for (std::size_t i = 0; i + 1 < us.t.size(); ++i) {
      require(us.t[i + 1] > us.t[i], "boundary.ustar.t", "must be strictly increasing");
    }
  }

  for (const auto* f : {&s.u0, &s.v0}) {
    const std::string name = f == &s.u0 ? "initial.u0" : "initial.v0";
    if (f->kind == InitialFieldSpec::Kind::nodal) {
      require(f->values.size() == mesh.node_count(), name + ".values", "needs one value per node");
    }
    if (f->kind == InitialFieldSpec::Kind::linear) {
      require(f->gradient.size() <= dim, name + ".gradient", "longer than the dimension");
    }
  }
  const Field u0 = s.u0.evaluate(mesh);
  for (std::size_t n = 0; n < u0.size(); ++n) {
    require(std::abs(s.transform(u0[n])) <= s.Lambda, "initial.u0", "sup|g(u0)| must not exceed Lambda");
  }

  if (s.memory.kind == MemorySpec::Kind::table) {
    require(s.memory.xi.has_value(), "memory.xi", "missing memory table");
    require(s.memory.xi->nodes() == mesh.node_count() && s.memory.xi->thresholds() == s.thresholds, "memory.xi",
            "shape must be nodes x thresholds");
  }

  const auto& c = s.stepper;
  (void)c.steps();
  require(c.newton_tol > 0.0, "solver.newton_tol", "must be positive");
  require(c.newton_max_iter >= 1, "solver.newton_max_iter", "must be at least 1");
  require(c.line_search_shrink > 0.0 && c.line_search_shrink < 1.0, "solver.line_search_shrink", "must lie in (0, 1)");
  require(c.fd_step > 0.0, "solver.fd_step", "must be positive");
}

// ---- Problem -------------------------------------------------------------

namespace {

Scenario validated(Scenario s) {
  validate_scenario(s);
  return s;
}

}  // namespace

Problem::Problem(Scenario scenario)
    : scenario_(validated(std::move(scenario))),
      mesh_(make_mesh(scenario_.mesh)),
      grid_(scenario_.Lambda, scenario_.thresholds),
      density_(scenario_.density.kind, scenario_.density.g_bar,
               modulation_values(scenario_.density.modulation, mesh_)) {
  nu_ = scenario_.gravity.nu();
  x0_ = mesh_.centroid();
  gravity_potential_.resize(mesh_.node_count());
  for (std::size_t n = 0; n < mesh_.node_count(); ++n) {
    const Point& x = mesh_.coord(n);
    gravity_potential_[n] = nu_[0] * (x[0] - x0_[0]) + nu_[1] * (x[1] - x0_[1]);
  }
  u0_ = scenario_.u0.evaluate(mesh_);
  v0_ = scenario_.v0.evaluate(mesh_);
  w0_ = u0_;
  for (double& w : w0_) w = scenario_.transform(w);
  if (scenario_.memory.kind == MemorySpec::Kind::virgin) {
    memory0_ = build_virgin_memory(w0_, grid_).lambda;
  } else {
    memory0_ = *scenario_.memory.xi;
  }
}

bool Problem::has_boundary_exchange() const noexcept {
  return std::any_of(scenario_.boundary.bstar.begin(), scenario_.boundary.bstar.end(), [](double b) { return b > 0.0; });
}

}  // namespace porohyst
