#include "porohyst/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "porohyst/assembly.hpp"
#include "porohyst/csv.hpp"
#include "porohyst/preisach.hpp"

namespace porohyst {

namespace {

// Round-off allowance for sums of O(scale) terms that should cancel.
constexpr double kRoundoff = 1e-13;

}  // namespace

SimulationState initial_state(const Problem& problem) {
  SimulationState s;
  s.u = problem.u0();
  s.v = problem.v0();
  s.memory = problem.initial_memory();
  s.theta = preisach_field(s.memory, problem.density(), problem.grid());
  return s;
}

double total_mass(const Problem& problem, const SimulationState& state) {
  const Mesh& mesh = problem.mesh();
  double mass = 0.0;
  for (std::size_t n = 0; n < mesh.node_count(); ++n) mass += mesh.lumped_mass(n) * (state.theta[n] + state.v[n]);
  return mass;
}

MassBalance mass_balance(const Problem& problem, const SimulationState& prev, const SimulationState& next,
                         double tau) {
  const double before = total_mass(problem, prev);
  const double after = total_mass(problem, next);
  const double outflow = tau * boundary_outflow(problem, next.u, next.time);
  return {after, after - before + outflow, outflow};
}

double total_energy(const Problem& problem, const SimulationState& state) {
  const Mesh& mesh = problem.mesh();
  const auto& phi_g = problem.gravity_potential();
  double energy = 0.0;
  for (std::size_t n = 0; n < mesh.node_count(); ++n) {
    const double potential =
        hysteresis_potential(state.memory, problem.density(), problem.grid(), n, problem.transform());
    energy += mesh.lumped_mass(n) * (potential + 0.5 * state.v[n] * state.v[n] + state.theta[n] * phi_g[n]);
  }
  return energy;
}

void energy_report(const Problem& problem, const SimulationState& prev, const SimulationState& next, double tau,
                   StepReport& report) {
  const Mesh& mesh = problem.mesh();
  const auto& phi_g = problem.gravity_potential();
  const auto split = potential_and_dissipation_step(prev.memory, next.memory, problem.density(), problem.grid(),
                                                    next.u, problem.transform());
  double dV = 0.0;
  double d_hyst = 0.0;
  double d_visc = 0.0;
  double cross = 0.0;
  double y_abs = 0.0;
  double min_node = std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n < mesh.node_count(); ++n) {
    const double m = mesh.lumped_mass(n);
    const double dv = next.v[n] - prev.v[n];
    dV += m * split.delta_potential[n];
    d_hyst += m * split.dissipation[n];
    d_visc += m * dv * dv / tau;
    cross += m * dv * phi_g[n];
    y_abs += m * std::abs(next.u[n] + phi_g[n]);
    min_node = std::min(min_node, split.dissipation[n]);
  }

  // Diffusion dissipation with the same quadrature and kappa as the residual.
  const Point& nu = problem.nu();
  double d_diff = 0.0;
  for (std::size_t e = 0; e < mesh.element_count(); ++e) {
    const auto& el = mesh.element(e);
    double theta_e = 0.0;
    for (std::size_t a = 0; a < mesh.nodes_per_element(); ++a) theta_e += next.theta[el[a]];
    theta_e /= static_cast<double>(mesh.nodes_per_element());
    for (const auto& q : mesh.quadrature()) {
      const Point g = mesh.gradient_at(e, q, next.u.span());
      const double gx = g[0] + nu[0];
      const double gy = g[1] + nu[1];
      d_diff += q.weight * problem.kappa(mesh.quadrature_position(e, q), theta_e) * (gx * gx + gy * gy);
    }
  }
  d_diff *= tau;

  double work = 0.0;
  for (const auto& f : boundary_flux(problem, next.u, next.time)) {
    work += f.flux * (next.u[f.node] + phi_g[f.node]) * f.measure;
  }
  work *= tau;

  const double e_prev = total_energy(problem, prev);
  const double e_next = total_energy(problem, next);
  report.energy = e_next;
  report.delta_potential = dV;
  report.dissipation_hyst = d_hyst;
  report.dissipation_visc = d_visc;
  report.dissipation_diff = d_diff;
  report.gravity_cross = cross;
  report.boundary_work = work;
  report.min_node_dissipation = mesh.node_count() == 0 ? 0.0 : min_node;
  report.energy_residual = (e_next - e_prev) + d_hyst + d_visc + d_diff + work + cross;
  const double scale = std::abs(e_prev) + std::abs(e_next) + d_hyst + d_visc + d_diff + std::abs(work) +
                       std::abs(cross);
  report.energy_budget = tau * std::max(problem.stepper().newton_tol, report.residual_norm) * y_abs + kRoundoff * scale;
  report.energy_ok = report.energy_residual <= report.energy_budget;
}

double bv_log_increment(const Problem& problem, const Field& u_prev, const Field& u_next, double tau) {
  const Mesh& mesh = problem.mesh();
  double sum = 0.0;
  for (std::size_t n = 0; n < mesh.node_count(); ++n) {
    const double du = std::abs(u_next[n] - u_prev[n]);
    sum += mesh.lumped_mass(n) * du * std::log1p(du / tau);
  }
  return sum;
}

double bv_log_total(const Problem& problem, std::span<const Field> trajectory, double tau) {
  double total = 0.0;
  for (std::size_t i = 1; i < trajectory.size(); ++i) {
    total += bv_log_increment(problem, trajectory[i - 1], trajectory[i], tau);
  }
  return total;
}

SupNorms sup_norm_monitor(const SimulationState& initial, std::span<const StepReport> reports) {
  SupNorms out{initial.u.sup_norm(), initial.v.sup_norm(), initial.theta.sup_norm()};
  for (const auto& r : reports) {
    out.u = std::max(out.u, r.sup_u);
    out.v = std::max(out.v, r.sup_v);
    out.theta = std::max(out.theta, r.sup_theta);
  }
  return out;
}

StepReport make_step_report(const Problem& problem, const SimulationState& prev, const SimulationState& next,
                            double tau, const StepStats& stats) {
  StepReport report;
  report.step = next.step;
  report.time = next.time;
  const MassBalance mb = mass_balance(problem, prev, next, tau);
  report.mass = mb.mass_next;
  report.mass_drift = mb.drift;
  report.boundary_outflow = mb.boundary_outflow;
  report.residual_norm = stats.residual_norm;
  energy_report(problem, prev, next, tau, report);
  report.sup_u = next.u.sup_norm();
  report.sup_v = next.v.sup_norm();
  report.sup_theta = next.theta.sup_norm();
  report.bv_log_increment = bv_log_increment(problem, prev.u, next.u, tau);
  report.newton_iterations = stats.newton_iterations;
  report.picard_iterations = stats.picard_iterations;
  report.halvings = stats.halvings;
  report.residual_norm = stats.residual_norm;
  return report;
}

void write_report_header(std::ostream& out) {
  out << "step,time,mass,mass_drift,boundary_outflow,energy,delta_potential,dissipation_hyst,"
         "dissipation_visc,dissipation_diff,gravity_cross,boundary_work,energy_residual,energy_budget,"
         "energy_ok,min_node_dissipation,sup_u,sup_v,sup_theta,bv_log_increment,newton_iterations,"
         "picard_iterations,halvings,residual_norm\n";
}

void write_report_row(std::ostream& out, const StepReport& r) {
  using io::format_double;
  out << r.step;
  for (double x : {r.time, r.mass, r.mass_drift, r.boundary_outflow, r.energy, r.delta_potential, r.dissipation_hyst,
                   r.dissipation_visc, r.dissipation_diff, r.gravity_cross, r.boundary_work, r.energy_residual,
                   r.energy_budget}) {
    out << ',' << format_double(x);
  }
  out << ',' << (r.energy_ok ? 1 : 0);
  for (double x : {r.min_node_dissipation, r.sup_u, r.sup_v, r.sup_theta, r.bv_log_increment}) {
    out << ',' << format_double(x);
  }
  out << ',' << r.newton_iterations << ',' << r.picard_iterations << ',' << r.halvings << ','
      << format_double(r.residual_norm) << '\n';
}

void write_snapshot(std::ostream& out, const Problem& problem, const SimulationState& state) {
  const Mesh& mesh = problem.mesh();
  const bool two_d = mesh.dimension() == 2;
  out << (two_d ? "node,x,y,u,v,theta\n" : "node,x,u,v,theta\n");
  for (std::size_t n = 0; n < mesh.node_count(); ++n) {
    out << n << ',' << io::format_double(mesh.coord(n)[0]);
    if (two_d) out << ',' << io::format_double(mesh.coord(n)[1]);
    out << ',' << io::format_double(state.u[n]) << ',' << io::format_double(state.v[n]) << ','
        << io::format_double(state.theta[n]) << '\n';
  }
}

}  // namespace porohyst
