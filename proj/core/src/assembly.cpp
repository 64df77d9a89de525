#include "porohyst/assembly.hpp"

#include <algorithm>
#include <cmath>

#include "porohyst/errors.hpp"
#include "porohyst/preisach.hpp"

namespace porohyst {

namespace {

void check_shapes(const Problem& problem, const Field& u, const StepInputs& step) {
  const std::size_t n = problem.mesh().node_count();
  if (u.size() != n || step.theta_prev.size() != n || step.v_prev.size() != n || step.memory_prev.nodes() != n ||
      step.memory_prev.thresholds() != problem.grid().size()) {
    throw DimensionMismatch("assembly: field sizes do not match the mesh");
  }
  if (!u.all_finite()) throw InvalidScenario("u", "trial pressure is not finite");
  if (!(step.tau > 0.0)) throw InvalidScenario("time.tau", "must be positive");
}

double element_theta(const Mesh& mesh, std::size_t e, const Field& theta) {
  const auto& el = mesh.element(e);
  double sum = 0.0;
  for (std::size_t a = 0; a < mesh.nodes_per_element(); ++a) sum += theta[el[a]];
  return sum / static_cast<double>(mesh.nodes_per_element());
}

double node_output(const Problem& p, const MemoryState& memory_prev, std::size_t node, double u) {
  return within_step_output(memory_prev, p.density(), p.grid(), node, p.transform()(u));
}

}  // namespace

Field trial_saturation(const Problem& problem, const MemoryState& memory_prev, const Field& u) {
  Field theta(u.size());
  for (std::size_t n = 0; n < u.size(); ++n) theta[n] = node_output(problem, memory_prev, n, u[n]);
  return theta;
}

ResidualParts assemble_residual_parts(const Problem& problem, const Field& u, const StepInputs& step) {
  check_shapes(problem, u, step);
  const Mesh& mesh = problem.mesh();
  const std::size_t n = mesh.node_count();
  ResidualParts parts{Field(n), Field(n), Field(n), Field(n), Field(n)};
  const Field theta = trial_saturation(problem, step.memory_prev, u);
  for (std::size_t i = 0; i < n; ++i) {
    const double m = mesh.lumped_mass(i);
    parts.storage[i] = m * (theta[i] - step.theta_prev[i]) / step.tau;
    parts.viscous[i] = m * (u[i] - step.v_prev[i]) / (1.0 + step.tau);
  }
  const Point& nu = problem.nu();
  const std::size_t npe = mesh.nodes_per_element();
  for (std::size_t e = 0; e < mesh.element_count(); ++e) {
    const auto& el = mesh.element(e);
    const double theta_e = element_theta(mesh, e, theta);
    for (const auto& q : mesh.quadrature()) {
      const double k = q.weight * problem.kappa(mesh.quadrature_position(e, q), theta_e);
      const Point g = mesh.gradient_at(e, q, u.span());
      for (std::size_t a = 0; a < npe; ++a) {
        parts.diffusion[el[a]] += k * (g[0] * q.grads[a][0] + g[1] * q.grads[a][1]);
        parts.gravity[el[a]] += k * (nu[0] * q.grads[a][0] + nu[1] * q.grads[a][1]);
      }
    }
  }
  const double ustar = problem.ustar(step.t_next);
  for (const auto& f : mesh.boundary()) {
    parts.boundary[f.node] += problem.bstar(f) * (u[f.node] - ustar) * f.measure;
  }
  return parts;
}

Field assemble_residual(const Problem& problem, const Field& u, const StepInputs& step) {
  const ResidualParts p = assemble_residual_parts(problem, u, step);
  Field r(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    r[i] = p.storage[i] + p.viscous[i] + p.diffusion[i] + p.gravity[i] + p.boundary[i];
  }
  return r;
}

std::vector<double> hysteresis_slopes(const Problem& problem, const MemoryState& memory_prev, const Field& u,
                                      double fd_step) {
  std::vector<double> slope(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double up = node_output(problem, memory_prev, i, u[i] + fd_step);
    const double down = node_output(problem, memory_prev, i, u[i] - fd_step);
    slope[i] = std::max(0.0, (up - down) / (2.0 * fd_step));
  }
  return slope;
}

Eigen::SparseMatrix<double> assemble_jacobian_with_slope(const Problem& problem, const Field& u,
                                                         const StepInputs& step, const std::vector<double>& slope) {
  check_shapes(problem, u, step);
  const Mesh& mesh = problem.mesh();
  const std::size_t n = mesh.node_count();
  const std::size_t npe = mesh.nodes_per_element();
  const Field theta = trial_saturation(problem, step.memory_prev, u);
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(n + mesh.element_count() * npe * npe + mesh.boundary().size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto idx = static_cast<Eigen::Index>(i);
    triplets.emplace_back(idx, idx, mesh.lumped_mass(i) * (slope[i] / step.tau + 1.0 / (1.0 + step.tau)));
  }
  for (std::size_t e = 0; e < mesh.element_count(); ++e) {
    const auto& el = mesh.element(e);
    const double theta_e = element_theta(mesh, e, theta);
    for (const auto& q : mesh.quadrature()) {
      const double k = q.weight * problem.kappa(mesh.quadrature_position(e, q), theta_e);
      for (std::size_t a = 0; a < npe; ++a) {
        for (std::size_t b = 0; b < npe; ++b) {
          triplets.emplace_back(static_cast<Eigen::Index>(el[a]), static_cast<Eigen::Index>(el[b]),
                                k * (q.grads[a][0] * q.grads[b][0] + q.grads[a][1] * q.grads[b][1]));
        }
      }
    }
  }
  for (const auto& f : mesh.boundary()) {
    const auto idx = static_cast<Eigen::Index>(f.node);
    triplets.emplace_back(idx, idx, problem.bstar(f) * f.measure);
  }
  Eigen::SparseMatrix<double> jac(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  jac.setFromTriplets(triplets.begin(), triplets.end());
  return jac;
}

Eigen::SparseMatrix<double> assemble_jacobian(const Problem& problem, const Field& u, const StepInputs& step) {
  return assemble_jacobian_with_slope(problem, u, step,
                                      hysteresis_slopes(problem, step.memory_prev, u, problem.stepper().fd_step));
}

std::vector<BoundaryFluxEntry> boundary_flux(const Problem& problem, const Field& u, double t) {
  const double ustar = problem.ustar(t);
  std::vector<BoundaryFluxEntry> out;
  for (const auto& f : problem.mesh().boundary()) {
    out.push_back({f.node, f.side, f.measure, problem.bstar(f) * (u[f.node] - ustar)});
  }
  return out;
}

double boundary_outflow(const Problem& problem, const Field& u, double t) {
  double total = 0.0;
  for (const auto& e : boundary_flux(problem, u, t)) total += e.flux * e.measure;
  return total;
}

}  // namespace porohyst
