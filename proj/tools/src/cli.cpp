#include "porohyst_cli/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "porohyst/checkpoint.hpp"
#include "porohyst/compatibility.hpp"
#include "porohyst/convexity.hpp"
#include "porohyst/csv.hpp"
#include "porohyst/diagnostics.hpp"
#include "porohyst/errors.hpp"
#include "porohyst/stepper.hpp"

namespace porohyst::cli {

namespace fs = std::filesystem;

namespace {

std::string step_name(std::size_t step, const char* ext) {
  std::ostringstream name;
  name << "step_" << std::setw(6) << std::setfill('0') << step << ext;
  return name.str();
}

// Keeps the header and the rows up to `step` so a restarted run appends
// exactly what an uninterrupted run would have written.
void truncate_reports(const fs::path& path, std::size_t step) {
  std::ifstream in(path);
  if (!in) return;
  std::string kept;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (!header) {
      const auto comma = line.find(',');
      if (std::stoull(line.substr(0, comma)) > step) break;
    }
    header = false;
    kept += line + '\n';
  }
  in.close();
  std::ofstream out(path, std::ios::trunc);
  out << kept;
}

// Runs `body`, mapping error categories to exit codes.
template <class Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const StepFailure& e) {
    err << "solver failure: " << e.what() << '\n';
    return kSolverFailure;
  } catch (const InternalInconsistency& e) {
    err << "solver failure: " << e.what() << '\n';
    return kSolverFailure;
  } catch (const ScenarioParseError& e) {
    err << "scenario parse error: " << e.what() << '\n';
    return kValidationFailure;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << '\n';
    return kValidationFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kValidationFailure;
  }
}

}  // namespace

fs::path resolve_output_dir(const std::optional<fs::path>& flag, const std::string& scenario_dir) {
  if (flag) return *flag;
  if (const char* env = std::getenv("POROHYST_OUT"); env != nullptr && *env != '\0') return env;
  return scenario_dir;
}

int cmd_validate(const fs::path& scenario_path, std::ostream& err) {
  return guarded(err, [&] {
    const Problem problem(load_scenario(scenario_path));
    const auto report = validate_compatibility(problem);
    print_report(err, report);
    return report.ok() ? kOk : kValidationFailure;
  });
}

int cmd_run(const RunArgs& args, std::ostream& err) {
  return guarded(err, [&] {
    Scenario scenario = load_scenario(args.scenario);
    if (args.snapshot_every) scenario.output.snapshot_every = *args.snapshot_every;
    if (args.checkpoint_every) scenario.output.checkpoint_every = *args.checkpoint_every;
    const Problem problem(scenario);
    const auto report = validate_compatibility(problem);
    for (const auto& item : report.items) {
      if (item.status != CheckStatus::pass) err << status_name(item.status) << "  " << item.name << ": " << item.detail << '\n';
    }
    if (!report.ok()) return static_cast<int>(kValidationFailure);

    const fs::path out = resolve_output_dir(args.out, scenario.output.directory);
    fs::create_directories(out);
    const std::size_t snap = scenario.output.snapshot_every;
    const std::size_t ckpt = scenario.output.checkpoint_every;
    if (snap > 0) fs::create_directories(out / "snapshots");
    if (ckpt > 0) fs::create_directories(out / "checkpoints");
    if (args.dump_mesh) {
      std::ofstream nodes(out / "mesh_nodes.csv");
      problem.mesh().write_nodes_csv(nodes);
      std::ofstream conn(out / "mesh_elements.csv");
      problem.mesh().write_connectivity_csv(conn);
    }
    const std::uint64_t fingerprint = scenario_fingerprint(problem.scenario());

    SimulationState start = initial_state(problem);
    const fs::path reports_path = out / "reports.csv";
    std::ofstream reports;
    if (args.restart) {
      start = load_checkpoint(*args.restart, fingerprint);
      truncate_reports(reports_path, start.step);
      reports.open(reports_path, std::ios::app);
      if (fs::file_size(reports_path) == 0) write_report_header(reports);
    } else {
      reports.open(reports_path, std::ios::trunc);
      write_report_header(reports);
      if (snap > 0) {
        std::ofstream s(out / "snapshots" / step_name(0, ".csv"));
        write_snapshot(s, problem, start);
      }
    }
    if (!reports) throw std::runtime_error("cannot write " + reports_path.string());

    std::size_t energy_flags = 0;
    double worst_drift = 0.0;
    RunOptions options;
    options.on_step = [&](const SimulationState& state, const StepReport& rep) {
      write_report_row(reports, rep);
      reports.flush();
      if (!rep.energy_ok) ++energy_flags;
      worst_drift = std::max(worst_drift, std::abs(rep.mass_drift));
      if (snap > 0 && state.step % snap == 0) {
        std::ofstream s(out / "snapshots" / step_name(state.step, ".csv"));
        write_snapshot(s, problem, state);
      }
      if (ckpt > 0 && state.step % ckpt == 0) {
        save_checkpoint(out / "checkpoints" / step_name(state.step, ".bin"), state, fingerprint);
      }
    };
    const RunResult result = run(problem, start, options);
    err << "completed " << result.final_state.step << " steps; max |mass drift| " << io::format_double(worst_drift)
        << "; energy budget exceeded in " << energy_flags << " step(s)\n";
    return static_cast<int>(kOk);
  });
}

int cmd_sweep(const SweepArgs& args, std::ostream& err) {
  return guarded(err, [&] {
    const Scenario scenario = load_scenario(args.scenario);
    const auto rows = tau_sweep(scenario, args.taus);
    const fs::path out = resolve_output_dir(args.out, scenario.output.directory);
    fs::create_directories(out);
    std::ofstream csv(out / "sweep.csv");
    write_sweep_csv(csv, rows);
    err << "sweep over " << rows.size() << " time step(s) written to " << (out / "sweep.csv").string() << '\n';
    return static_cast<int>(kOk);
  });
}

int cmd_convexity(const ConvexityArgs& args, std::ostream& err) {
  return guarded(err, [&] {
    if (args.length < 2) throw std::invalid_argument("--length must be at least 2");
    const PrandtlIshlinskiiDensity density = args.density == "decay"
                                                 ? PrandtlIshlinskiiDensity::decay(args.height, args.m, args.U)
                                                 : PrandtlIshlinskiiDensity::constant(args.height, args.U);
    if (args.density != "decay" && args.density != "constant") {
      throw std::invalid_argument("--density must be constant or decay");
    }
    const FluxFunction flux = FluxFunction::log_regularized(args.tau);
    double beta = 0.0;
    if (args.beta) {
      beta = *args.beta;
    } else {
      const auto derived = derive_beta_two_step(density, flux, args.U, args.grid);
      beta = derived.beta;
      err << "derived beta " << io::format_double(beta) << " from " << derived.sequences
          << " two-step grid sequences\n";
    }
    std::mt19937_64 rng(args.seed);
    std::uniform_real_distribution<double> dist(-args.U, args.U);
    std::size_t failures = 0;
    double worst = std::numeric_limits<double>::infinity();
    std::ofstream csv;
    if (args.out) {
      fs::create_directories(*args.out);
      csv.open(*args.out / "convexity.csv");
      csv << "sequence,lhs,gamma_sum,ratio,holds\n";
    }
    std::vector<double> seq(args.length);
    for (std::size_t s = 0; s < args.sequences; ++s) {
      for (double& w : seq) w = dist(rng);
      const auto check = check_convexity_inequality(density, seq, flux, beta);
      const double ratio = check.gamma_sum > 0.0 ? 2.0 * check.lhs / check.gamma_sum
                                                 : std::numeric_limits<double>::infinity();
      worst = std::min(worst, ratio);
      if (!check.holds) ++failures;
      if (csv.is_open()) {
        csv << s << ',' << io::format_double(check.lhs) << ',' << io::format_double(check.gamma_sum) << ','
            << io::format_double(ratio) << ',' << (check.holds ? 1 : 0) << '\n';
      }
    }
    err << (failures == 0 ? "PASS" : "FAIL") << ": " << args.sequences - failures << "/" << args.sequences
        << " sequences satisfy the inequality with beta " << io::format_double(beta) << " (smallest ratio "
        << io::format_double(worst) << ")\n";
    return static_cast<int>(failures == 0 ? kOk : kValidationFailure);
  });
}

int main(int argc, char** argv) {
  CLI::App app{"Hysteretic unsaturated porous-media flow: simulation and diagnostics"};
  app.require_subcommand(1);

  RunArgs run_args;
  std::string run_out;
  auto* run_cmd = app.add_subcommand("run", "run a scenario and write step reports and snapshots");
  run_cmd->add_option("--scenario", run_args.scenario, "scenario JSON file")->required()->check(CLI::ExistingFile);
  auto* run_out_opt = run_cmd->add_option("--out", run_out, "output directory");
  run_cmd->add_option("--snapshot-every", run_args.snapshot_every, "write a field snapshot every k steps (0: off)");
  run_cmd->add_option("--checkpoint-every", run_args.checkpoint_every, "write a checkpoint every k steps (0: off)");
  run_cmd->add_option("--restart", run_args.restart, "continue from a checkpoint file")->check(CLI::ExistingFile);
  run_cmd->add_flag("--dump-mesh", run_args.dump_mesh, "write mesh node and element CSVs");

  fs::path validate_path;
  auto* validate_cmd = app.add_subcommand("validate", "check scenario invariants and initial compatibility");
  validate_cmd->add_option("--scenario", validate_path, "scenario JSON file")->required()->check(CLI::ExistingFile);

  SweepArgs sweep_args;
  std::string sweep_out;
  auto* sweep_cmd = app.add_subcommand("sweep", "run a scenario for several time steps and compare");
  sweep_cmd->add_option("--scenario", sweep_args.scenario, "scenario JSON file")->required()->check(CLI::ExistingFile);
  auto* sweep_out_opt = sweep_cmd->add_option("--out", sweep_out, "output directory");
  sweep_cmd->add_option("--tau-list", sweep_args.taus, "comma-separated time steps")->required()->delimiter(',');

  ConvexityArgs cx;
  std::string cx_out;
  auto* cx_cmd = app.add_subcommand("convexity", "check the convexity inequality on random input sequences");
  cx_cmd->add_option("--sequences", cx.sequences, "number of random sequences")->capture_default_str();
  cx_cmd->add_option("--beta", cx.beta, "beta to test (default: derived by two-step grid search)");
  cx_cmd->add_option("--length", cx.length, "sequence length")->capture_default_str();
  cx_cmd->add_option("--tau", cx.tau, "regularization tau of f(w) = w / (tau + |w|)")->capture_default_str();
  cx_cmd->add_option("--U", cx.U, "input bound and operator radius")->capture_default_str();
  cx_cmd->add_option("--density", cx.density, "constant or decay")->capture_default_str();
  cx_cmd->add_option("--height", cx.height, "density height (phi0 for decay)")->capture_default_str();
  cx_cmd->add_option("--m", cx.m, "decay exponent")->capture_default_str();
  cx_cmd->add_option("--grid", cx.grid, "grid points per axis for the beta search")->capture_default_str();
  cx_cmd->add_option("--seed", cx.seed, "random seed")->capture_default_str();
  auto* cx_out_opt = cx_cmd->add_option("--out", cx_out, "directory for per-sequence CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kValidationFailure;
  }

  if (*run_cmd) {
    if (*run_out_opt) run_args.out = fs::path(run_out);
    return cmd_run(run_args, std::cerr);
  }
  if (*validate_cmd) return cmd_validate(validate_path, std::cerr);
  if (*sweep_cmd) {
    if (*sweep_out_opt) sweep_args.out = fs::path(sweep_out);
    return cmd_sweep(sweep_args, std::cerr);
  }
  if (*cx_out_opt) cx.out = fs::path(cx_out);
  return cmd_convexity(cx, std::cerr);
}

}  // namespace porohyst::cli
