#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace porohyst::cli {

enum ExitCode : int { kOk = 0, kValidationFailure = 1, kSolverFailure = 2 };

struct RunArgs {
  std::filesystem::path scenario;
  std::optional<std::filesystem::path> out;
  std::optional<std::size_t> snapshot_every;
  std::optional<std::size_t> checkpoint_every;
  std::optional<std::filesystem::path> restart;
  bool dump_mesh = false;
};

struct SweepArgs {
  std::filesystem::path scenario;
  std::optional<std::filesystem::path> out;
  std::vector<double> taus;
};

struct ConvexityArgs {
  std::size_t sequences = 1000;
  std::optional<double> beta;  // derived by two-step grid search when absent
  std::size_t length = 20;
  double tau = 0.01;
  double U = 1.0;
  std::string density = "constant";  // constant | decay
  double height = 1.0;
  double m = 4.0;
  std::size_t grid = 41;
  unsigned long long seed = 1;
  std::optional<std::filesystem::path> out;
};

// Each command writes data files only; messages go to `err`.
int cmd_run(const RunArgs& args, std::ostream& err);
int cmd_validate(const std::filesystem::path& scenario, std::ostream& err);
int cmd_sweep(const SweepArgs& args, std::ostream& err);
int cmd_convexity(const ConvexityArgs& args, std::ostream& err);

/// Output directory: --out, else $POROHYST_OUT, else the scenario's output.directory.
std::filesystem::path resolve_output_dir(const std::optional<std::filesystem::path>& flag,
                                         const std::string& scenario_dir);

int main(int argc, char** argv);

}  // namespace porohyst::cli
