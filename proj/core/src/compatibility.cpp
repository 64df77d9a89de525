#include "porohyst/compatibility.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "porohyst/assembly.hpp"
#include "porohyst/csv.hpp"
#include "porohyst/initial_memory.hpp"
#include "porohyst/preisach.hpp"
#include "porohyst/quadrature.hpp"

namespace porohyst {

namespace {

constexpr double kQuadratureTolerance = 1e-3;
constexpr double kRobinTolerance = 1e-8;
constexpr double kSignTolerance = 1e-9;

CompatibilityItem check_anchor(const Problem& p) {
  const auto report = check_memory_invariants(p.initial_memory(), p.grid(), p.w0());
  double worst = 0.0;
  for (std::size_t n = 0; n < p.w0().size(); ++n) {
    worst = std::max(worst, std::abs(p.initial_memory().at(n, 0) - p.w0()[n]) - p.grid().node(0));
  }
  std::string detail = report.ok() ? "memory anchored at u0, 1-Lipschitz, vanishing at Lambda" : "";
  for (const auto& m : report.messages) detail += (detail.empty() ? "" : "; ") + m;
  return {"(i) lambda(x,0) = u0", report.ok() ? CheckStatus::pass : CheckStatus::fail, std::max(0.0, worst), detail};
}

// Refined quadrature of theta0 over the piecewise-linear interpolant of the
// memory through (0, w0), (r_k, lambda_k), (Lambda, 0).
CompatibilityItem check_theta0(const Problem& p) {
  const auto& grid = p.grid();
  const auto& memory = p.initial_memory();
  const Field theta0 = preisach_field(memory, p.density(), grid);
  std::vector<double> r{0.0};
  r.insert(r.end(), grid.nodes().begin(), grid.nodes().end());
  r.push_back(grid.lambda());
  double worst = 0.0;
  std::vector<double> lam(r.size());
  for (std::size_t n = 0; n < memory.nodes(); ++n) {
    lam.front() = p.w0()[n];
    for (std::size_t k = 0; k < grid.size(); ++k) lam[k + 1] = memory.at(n, k);
    lam.back() = 0.0;
    auto lambda_at = [&](double s) {
      const auto it = std::upper_bound(r.begin(), r.end(), s);
      const std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(it - r.begin()), r.size() - 1) - 1;
      const double t = (s - r[i]) / (r[i + 1] - r[i]);
      return lam[i] + t * (lam[i + 1] - lam[i]);
    };
    const double integral = integrate_split([&](double s) { return p.density().psi(s, lambda_at(s)); }, 0.0,
                                            grid.lambda(), r, 2, 8);
    const double reference = p.density().g_bar() + p.density().multiplier(n) * integral;
    worst = std::max(worst, std::abs(reference - theta0[n]));
  }
  return {"(ii) theta0 = G[lambda]", worst <= kQuadratureTolerance ? CheckStatus::pass : CheckStatus::warn, worst,
          "max |theta0 - refined quadrature| = " + io::format_double(worst)};
}

CompatibilityItem check_robin(const Problem& p) {
  const Mesh& mesh = p.mesh();
  const Field theta0 = preisach_field(p.initial_memory(), p.density(), p.grid());
  const Field& u0 = p.u0();
  // Element-center gradient and kappa, averaged over elements touching each node.
  std::vector<Point> flux(mesh.node_count(), Point{0.0, 0.0});
  std::vector<double> touches(mesh.node_count(), 0.0);
  for (std::size_t e = 0; e < mesh.element_count(); ++e) {
    const auto& el = mesh.element(e);
    Point g{0.0, 0.0};
    Point xc{0.0, 0.0};
    double th = 0.0;
    double wsum = 0.0;
    for (const auto& q : mesh.quadrature()) {
      const Point gq = mesh.gradient_at(e, q, u0.span());
      const Point xq = mesh.quadrature_position(e, q);
      g = {g[0] + q.weight * gq[0], g[1] + q.weight * gq[1]};
      xc = {xc[0] + q.weight * xq[0], xc[1] + q.weight * xq[1]};
      wsum += q.weight;
    }
    g = {g[0] / wsum, g[1] / wsum};
    xc = {xc[0] / wsum, xc[1] / wsum};
    for (std::size_t a = 0; a < mesh.nodes_per_element(); ++a) th += theta0[el[a]];
    th /= static_cast<double>(mesh.nodes_per_element());
    const double k = p.kappa(xc, th);
    for (std::size_t a = 0; a < mesh.nodes_per_element(); ++a) {
      flux[el[a]][0] += k * (g[0] + p.nu()[0]);
      flux[el[a]][1] += k * (g[1] + p.nu()[1]);
      touches[el[a]] += 1.0;
    }
  }
  double worst = 0.0;
  std::string where = "all boundary facets consistent";
  const double ustar0 = p.ustar(0.0);
  for (const auto& f : mesh.boundary()) {
    const std::size_t n = f.node;
    const double qn = (flux[n][0] * f.normal[0] + flux[n][1] * f.normal[1]) / touches[n];
    const double mismatch = std::abs(-qn - p.bstar(f) * (u0[n] - ustar0));
    if (mismatch > worst) {
      worst = mismatch;
      where = "largest mismatch " + io::format_double(mismatch) + " at node " + std::to_string(n) + " (" +
              std::string(side_name(f.side)) + ")";
    }
  }
  return {"(iii) Robin compatibility", worst <= kRobinTolerance ? CheckStatus::pass : CheckStatus::warn, worst, where};
}

CompatibilityItem check_sign(const Problem& p) {
  const Mesh& mesh = p.mesh();
  const Field theta0 = preisach_field(p.initial_memory(), p.density(), p.grid());
  // div(kappa (grad u0 + nu)) from the weak form: -(stiffness + gravity + Robin) / M.
  const StepInputs step{p.initial_memory(), theta0, p.v0(), 1.0, 0.0};
  const ResidualParts parts = assemble_residual_parts(p, p.u0(), step);
  const double r0 = p.grid().node(0);
  std::size_t violations = 0;
  double worst = 0.0;
  for (std::size_t n = 0; n < mesh.node_count(); ++n) {
    const double div = -(parts.diffusion[n] + parts.gravity[n] + parts.boundary[n]) / mesh.lumped_mass(n);
    const double rho = div + p.v0()[n] - p.u0()[n];
    const double slope = (p.w0()[n] - p.initial_memory().at(n, 0)) / r0;  // -d lambda / dr on (0, r_0)
    double miss = 0.0;
    if (rho > kSignTolerance) miss = std::abs(slope - 1.0);
    else if (rho < -kSignTolerance) miss = std::abs(slope + 1.0);
    else miss = std::max(0.0, std::abs(slope) - 1.0);
    if (miss > 1e-9) {
      ++violations;
      worst = std::max(worst, miss);
    }
  }
  return {"(iv) memory sign condition", violations == 0 ? CheckStatus::pass : CheckStatus::warn, worst,
          violations == 0 ? "initial branch direction matches the elliptic residual sign"
                          : std::to_string(violations) + " node(s) with mismatched initial branch direction"};
}

}  // namespace

const char* status_name(CheckStatus status) {
  switch (status) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::warn: return "warn";
    case CheckStatus::fail: return "FAIL";
  }
  return "?";
}

bool CompatibilityReport::ok() const noexcept {
  return std::none_of(items.begin(), items.end(), [](const auto& i) { return i.status == CheckStatus::fail; });
}

bool CompatibilityReport::clean() const noexcept {
  return std::all_of(items.begin(), items.end(), [](const auto& i) { return i.status == CheckStatus::pass; });
}

const CompatibilityItem& CompatibilityReport::item(const std::string& prefix) const {
  for (const auto& i : items) {
    if (i.name.rfind(prefix, 0) == 0) return i;
  }
  throw std::out_of_range("no compatibility item " + prefix);
}

CompatibilityReport validate_compatibility(const Problem& problem) {
  return {{check_anchor(problem), check_theta0(problem), check_robin(problem), check_sign(problem)}};
}

void print_report(std::ostream& out, const CompatibilityReport& report) {
  for (const auto& i : report.items) out << status_name(i.status) << "  " << i.name << ": " << i.detail << '\n';
}

}  // namespace porohyst
