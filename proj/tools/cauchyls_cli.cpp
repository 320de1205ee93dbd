// Command-line front end: solve <config>, experiment <exp1|exp2|exp3>,
// svd <config>. Artifacts go below $CAUCHYLS_OUTPUT_ROOT (default: cwd).

#include <CLI11.hpp>

#include "cauchyls/app/runner.hpp"

int main(int argc, char** argv) {
  using namespace cauchyls::app;

  CLI::App app{"Level-set reconstruction of the unknown flux in an elliptic Cauchy problem"};
  app.require_subcommand(1);

  std::string solve_config;
  auto* solve = app.add_subcommand("solve", "run the method described by a config file");
  solve->add_option("config", solve_config, "key = value config file")->required();

  std::string experiment_name;
  auto* experiment = app.add_subcommand("experiment", "run a built-in experiment");
  experiment->add_option("name", experiment_name, "exp1, exp2 or exp3")->required();

  std::string svd_config;
  auto* svd = app.add_subcommand("svd", "singular values of L for a config's geometry");
  svd->add_option("config", svd_config, "key = value config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  if (*solve) return cmd_run(solve_config);
  if (*experiment) return cmd_experiment(experiment_name);
  return cmd_svd(svd_config);
}
