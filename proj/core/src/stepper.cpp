#include "porohyst/stepper.hpp"

#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <ostream>

#include "porohyst/assembly.hpp"
#include "porohyst/csv.hpp"
#include "porohyst/errors.hpp"
#include "porohyst/preisach.hpp"

namespace porohyst {

namespace {

constexpr double kArmijo = 1e-4;
constexpr double kMinStep = 1e-10;
// A Newton correction below this many ulps of |u| cannot improve the iterate:
// the residual has reached its round-off floor, which grows with mesh size.
constexpr double kStagnationUlps = 16.0;

// Euclidean norm of R / M: smooth merit function for the line search.
double merit(const Problem& problem, const Field& r) {
  double s = 0.0;
  for (std::size_t n = 0; n < r.size(); ++n) {
    const double x = r[n] / problem.mesh().lumped_mass(n);
    s += x * x;
  }
  return std::sqrt(s);
}

bool solve_linear(const Eigen::SparseMatrix<double>& a, const Field& rhs, Field& out) {
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(a);
  if (ldlt.info() != Eigen::Success) return false;
  const Eigen::Map<const Eigen::VectorXd> b(rhs.values().data(), static_cast<Eigen::Index>(rhs.size()));
  const Eigen::VectorXd x = ldlt.solve(b);
  if (ldlt.info() != Eigen::Success || !x.allFinite()) return false;
  out = Field(std::vector<double>(x.data(), x.data() + x.size()));
  return true;
}

Field axpy(const Field& u, double alpha, const Field& d) {
  Field out(u.size());
  for (std::size_t n = 0; n < u.size(); ++n) out[n] = u[n] - alpha * d[n];
  return out;
}

struct Solve {
  Field u;
  double norm;
  bool converged;
};

// Damped Newton until convergence, iteration limit or line-search failure.
// Converged means norm <= tol, or a full correction at round-off level of u.
Solve newton(const Problem& p, const StepInputs& step, const StepperConfig& c, Field u, StepStats& stats) {
  Field r = assemble_residual(p, u, step);
  double norm = residual_norm(p, r);
  for (std::size_t it = 0; it < c.newton_max_iter && norm > c.newton_tol; ++it) {
    ++stats.newton_iterations;
    Field delta;
    if (!solve_linear(assemble_jacobian(p, u, step), r, delta)) break;
    if (delta.sup_norm() <= kStagnationUlps * std::numeric_limits<double>::epsilon() * (1.0 + u.sup_norm())) {
      u = axpy(u, 1.0, delta);
      r = assemble_residual(p, u, step);
      return {std::move(u), residual_norm(p, r), true};
    }
    const double m0 = merit(p, r);
    double alpha = 1.0;
    bool accepted = false;
    while (alpha >= kMinStep) {
      Field trial = axpy(u, alpha, delta);
      Field rt = assemble_residual(p, trial, step);
      const double nt = residual_norm(p, rt);
      if (merit(p, rt) <= (1.0 - kArmijo * alpha) * m0 || nt <= c.newton_tol) {
        u = std::move(trial);
        r = std::move(rt);
        norm = nt;
        accepted = true;
        break;
      }
      alpha *= c.line_search_shrink;
    }
    if (!accepted) break;
  }
  return {std::move(u), norm, norm <= c.newton_tol};
}

// Fixed-point iteration u <- u - A^{-1} R(u) with A the Newton matrix whose
// storage slope is frozen at the Lipschitz bound of G_i and whose kappa lags
// one iterate. Returns once the residual dropped tenfold or converged.
Solve picard(const Problem& p, const StepInputs& step, const StepperConfig& c, Field u, double target,
             std::size_t& budget, StepStats& stats) {
  std::vector<double> slope(u.size());
  for (std::size_t n = 0; n < u.size(); ++n) slope[n] = hysteresis_slope_bound(p.density(), p.grid(), n);
  Field r = assemble_residual(p, u, step);
  double norm = residual_norm(p, r);
  while (budget > 0 && norm > c.newton_tol && norm > target) {
    --budget;
    ++stats.picard_iterations;
    Field delta;
    if (!solve_linear(assemble_jacobian_with_slope(p, u, step, slope), r, delta)) break;
    u = axpy(u, 1.0, delta);
    r = assemble_residual(p, u, step);
    norm = residual_norm(p, r);
  }
  return {std::move(u), norm, norm <= c.newton_tol};
}

SimulationState single_step(const Problem& p, const SimulationState& prev, const StepperConfig& c, double t_next,
                            StepStats& stats) {
  const StepInputs step{prev.memory, prev.theta, prev.v, c.tau, t_next};
  Solve s = newton(p, step, c, prev.u, stats);
  std::size_t budget = c.picard_fallback ? c.picard_max_iter : 0;
  while (!s.converged && budget > 0) {
    const double target = 0.1 * s.norm;
    s = picard(p, step, c, std::move(s.u), target, budget, stats);
    if (s.converged || !std::isfinite(s.norm)) break;
    s = newton(p, step, c, std::move(s.u), stats);
  }
  stats.residual_norm = s.norm;
  if (!s.converged) throw StepFailure(prev.step + 1, s.norm, "nonlinear solve did not converge");

  SimulationState next;
  next.step = prev.step + 1;
  next.time = t_next;
  next.u = std::move(s.u);
  next.v = Field(next.u.size());
  for (std::size_t n = 0; n < next.u.size(); ++n) next.v[n] = (prev.v[n] + c.tau * next.u[n]) / (1.0 + c.tau);
  Field w = next.u;
  for (double& x : w) x = p.transform()(x);
  next.memory = update_memory(prev.memory, w, p.grid());
  next.theta = preisach_field(next.memory, p.density(), p.grid());
  return next;
}

SimulationState step_with_retry(const Problem& p, const SimulationState& prev, const StepperConfig& c,
                                double t_next, std::size_t depth, StepStats& stats) {
  try {
    return single_step(p, prev, c, t_next, stats);
  } catch (const StepFailure&) {
    if (!c.retry_halving || depth >= c.max_halvings) throw;
  }
  StepperConfig half = c;
  half.tau = 0.5 * c.tau;
  stats.halvings = std::max(stats.halvings, depth + 1);
  SimulationState mid = step_with_retry(p, prev, half, prev.time + half.tau, depth + 1, stats);
  SimulationState next = step_with_retry(p, mid, half, t_next, depth + 1, stats);
  next.step = prev.step + 1;
  return next;
}

}  // namespace

double residual_norm(const Problem& problem, const Field& residual) {
  double norm = 0.0;
  for (std::size_t n = 0; n < residual.size(); ++n) {
    const double x = std::abs(residual[n]) / problem.mesh().lumped_mass(n);
    if (!std::isfinite(x)) return std::numeric_limits<double>::infinity();
    norm = std::max(norm, x);
  }
  return norm;
}

SimulationState solve_step(const Problem& problem, const SimulationState& prev, const StepperConfig& config,
                           StepStats* stats) {
  StepStats local;
  // Time levels are i * tau, never accumulated, so restarts reproduce them exactly.
  const double t_next = static_cast<double>(prev.step + 1) * config.tau;
  SimulationState next = step_with_retry(problem, prev, config, t_next, 0, local);
  if (stats != nullptr) *stats = local;
  return next;
}

RunResult run(const Problem& problem, const SimulationState& start, const RunOptions& options) {
  const StepperConfig& config = problem.stepper();
  const std::size_t n = config.steps();
  RunResult result;
  result.final_state = start;
  if (options.keep_trajectory) result.u_trajectory.push_back(start.u);
  for (std::size_t i = start.step; i < n; ++i) {
    StepStats stats;
    SimulationState next = solve_step(problem, result.final_state, config, &stats);
    StepReport report = make_step_report(problem, result.final_state, next, config.tau, stats);
    if (options.on_step) options.on_step(next, report);
    if (options.keep_trajectory) result.u_trajectory.push_back(next.u);
    result.reports.push_back(report);
    result.final_state = std::move(next);
  }
  return result;
}

RunResult run(const Problem& problem, const RunOptions& options) {
  return run(problem, initial_state(problem), options);
}

std::vector<SweepRow> tau_sweep(const Scenario& scenario, const std::vector<double>& taus) {
  if (taus.empty()) throw InvalidScenario("tau_list", "needs at least one tau");
  std::vector<SweepRow> rows;
  std::vector<Field> finals;
  std::optional<Problem> first;
  for (double tau : taus) {
    Scenario s = scenario;
    s.stepper.tau = tau;
    const Problem problem(std::move(s));
    const RunResult r = run(problem);
    SweepRow row{tau, r.reports.size(), 0.0, 0.0, 0.0, 0.0};
    row.max_sup_u = sup_norm_monitor(initial_state(problem), r.reports).u;
    for (const auto& rep : r.reports) {
      row.bv_log_total += rep.bv_log_increment;
      row.total_dissipation += rep.dissipation_hyst + rep.dissipation_visc + rep.dissipation_diff;
    }
    rows.push_back(row);
    finals.push_back(r.final_state.u);
    if (!first) first.emplace(problem);
  }
  const auto finest = static_cast<std::size_t>(
      std::min_element(taus.begin(), taus.end()) - taus.begin());
  const Mesh& mesh = first->mesh();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    double s = 0.0;
    for (std::size_t n = 0; n < mesh.node_count(); ++n) {
      const double d = finals[i][n] - finals[finest][n];
      s += mesh.lumped_mass(n) * d * d;
    }
    rows[i].l2_distance = std::sqrt(s);
  }
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "tau,steps,max_sup_u,bv_log_total,total_dissipation,l2_distance\n";
  for (const auto& r : rows) {
    out << io::format_double(r.tau) << ',' << r.steps << ',' << io::format_double(r.max_sup_u) << ','
        << io::format_double(r.bv_log_total) << ',' << io::format_double(r.total_dissipation) << ','
        << io::format_double(r.l2_distance) << '\n';
  }
}

}  // namespace porohyst
