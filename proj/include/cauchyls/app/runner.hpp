#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "cauchyls/app/config.hpp"
#include "cauchyls/operator.hpp"
#include "cauchyls/run_record.hpp"

namespace cauchyls::app {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitSolver = 3;

/// Environment variable that relocates relative output directories.
inline constexpr const char* kOutputRootEnv = "CAUCHYLS_OUTPUT_ROOT";

/// Everything a run needs, derived from a config: inversion grid, operator,
/// (possibly noisy) data synthesized on the refined grid, the true flux and
/// the initial level-set function.
struct Problem {
  OperatorContext ctx;
  CauchyData data;
  TraceFn truth;
  TraceFn phi0;
  double eps = 0.0;
};
Problem build_problem(const RunConfig& c);

struct RunOutcome {
  RunRecord record;
  double wall_seconds = 0.0;
  double rhs_norm = 0.0;
};
RunOutcome execute(const RunConfig& c, const Problem& problem);

/// Convenience: build_problem followed by execute.
RunOutcome run_config(const RunConfig& c);

/// Output root: $CAUCHYLS_OUTPUT_ROOT if set, else the working directory.
std::filesystem::path output_root();
/// c.directory resolved against output_root() unless it is absolute.
std::filesystem::path output_dir(const RunConfig& c);

/// Writes history.csv, snapshot_<iter>.csv and summary.txt into `dir`.
void write_artifacts(const std::filesystem::path& dir, const RunConfig& c, const Problem& problem,
                     const RunOutcome& outcome);

/// Built-in desk-scale setups.
RunConfig exp1_config();
RunConfig exp2_config(double height);
RunConfig exp3_config();

/// Iterations needed by each height of exp2 to reach the common relative
/// residual threshold; nullopt when a run never gets there.
struct Exp2Comparison {
  double threshold_factor = 1e-3;
  std::optional<int> iters_height_1;
  std::optional<int> iters_height_05;
  std::optional<double> ratio() const;
};
Exp2Comparison compare_exp2(const RunOutcome& height_1, const RunOutcome& height_05,
                            double threshold_factor = 1e-3);

/// Singular values of L for a config's geometry, with the log-linear decay
/// fit over k = 2..15.
struct SpectrumReport {
  std::vector<double> sigma;
  DecayFit fit;
};
SpectrumReport spectrum_for(const RunConfig& c);

/// Command entry points; they print diagnostics and return an exit code.
int cmd_run(const std::filesystem::path& config_path);
int cmd_experiment(const std::string& name);
int cmd_svd(const std::filesystem::path& config_path);

}  // namespace cauchyls::app
