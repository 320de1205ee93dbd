#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cauchyls/app/runner.hpp"

using namespace cauchyls;
using namespace cauchyls::app;
namespace fs = std::filesystem;

namespace {

fs::path scratch_root() {
  const fs::path root = fs::temp_directory_path() / "cauchyls_cli_tests";
  fs::create_directories(root);
  ::setenv(kOutputRootEnv, root.c_str(), 1);
  return root;
}

fs::path write_config(const std::string& name, const std::string& text) {
  const fs::path p = scratch_root() / name;
  std::ofstream(p) << text;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kSmallRun =
    "geometry.height = 0.5\n"
    "geometry.nx = 32\n"
    "method.max_iters = 40   # short\n"
    "truth.intervals = 0.3:0.6\n"
    "init.intervals = 0.25:0.7\n"
    "output.snapshot_iters = 0, 20\n";

}  // namespace

TEST_CASE("config parsing: values, comments and defaults") {
  std::istringstream in(
      "# comment line\n"
      "geometry.nx = 48\n"
      "geometry.height = 1.0\n"
      "method.name = hj   # trailing comment\n"
      "truth.intervals = 0.2:0.4, 0.6:0.8\n"
      "init.constant = -0.01\n"
      "output.snapshot_iters = 0, 10\n");
  const RunConfig c = parse_config(in);
  CHECK(c.nx == 48);
  CHECK(c.resolved_ny() == 48);
  CHECK(c.method == Method::Hj);
  REQUIRE(c.truth.size() == 2u);
  CHECK(c.truth[1].lo == 0.6);
  CHECK(c.init.use_constant);
  CHECK(c.snapshot_iters == std::vector<int>{0, 10});
  CHECK(c.alpha == 1e2);
  CHECK(c.data_refinement_ratio == 2);
  CHECK_NOTHROW(validate(c));
}

TEST_CASE("config parsing rejects bad input and names the key") {
  const auto fails_with = [](const std::string& text, const std::string& needle) {
    std::istringstream in(text);
    try {
      validate(parse_config(in));
    } catch (const ConfigError& e) {
      return std::string(e.what()).find(needle) != std::string::npos;
    }
    return false;
  };
  const std::string base = "truth.intervals = 0.3:0.6\ninit.intervals = 0.2:0.7\n";
  CHECK(fails_with(base + "geometry.colour = red\n", "geometry.colour"));
  CHECK(fails_with(base + "geometry.nx = 2\n", "geometry.nx"));
  CHECK(fails_with(base + "geometry.nx = sixty\n", "geometry.nx"));
  CHECK(fails_with(base + "geometry.nx = 8\ngeometry.nx = 16\n", "given twice"));
  CHECK(fails_with(base + "method.name = newton\n", "method.name"));
  CHECK(fails_with(base + "just some words\n", "line 3"));
  CHECK(fails_with("init.intervals = 0.2:0.7\n", "truth.intervals"));
  CHECK(fails_with(base + "data.noise_level = 0.1\nmethod.tau = 1.0\n", "tau > 1"));
  CHECK(fails_with("truth.intervals = 0.6:0.3\n", "lo < hi"));
}

TEST_CASE("solve writes history, snapshots and summary") {
  const fs::path cfg = write_config("small.cfg", std::string(kSmallRun) + "output.directory = small\n");
  REQUIRE(cmd_run(cfg) == kExitOk);
  const fs::path dir = scratch_root() / "small";
  const std::string history = slurp(dir / "history.csv");
  CHECK(history.rfind("iter,residual,error,components\n", 0) == 0);
  CHECK(std::count(history.begin(), history.end(), '\n') == 42);
  CHECK(slurp(dir / "snapshot_20.csv").rfind("x,phi,q,true_q\n", 0) == 0);
  const std::string summary = slurp(dir / "summary.txt");
  CHECK(summary.find("stop_reason = max_iters\n") != std::string::npos);
  CHECK(summary.find("method.alpha = 100\n") != std::string::npos);
  CHECK(summary.find("data.seed = 1\n") != std::string::npos);
}

TEST_CASE("identical configs give byte-identical histories") {
  const std::string noisy = std::string(kSmallRun) + "data.noise_level = 0.1\ndata.seed = 7\n";
  REQUIRE(cmd_run(write_config("a.cfg", noisy + "output.directory = det_a\n")) == kExitOk);
  REQUIRE(cmd_run(write_config("b.cfg", noisy + "output.directory = det_b\n")) == kExitOk);
  const fs::path root = scratch_root();
  CHECK(slurp(root / "det_a" / "history.csv") == slurp(root / "det_b" / "history.csv"));
  CHECK(slurp(root / "det_a" / "snapshot_0.csv") == slurp(root / "det_b" / "snapshot_0.csv"));
}

TEST_CASE("tau <= 1 with noise exits 2") {
  const fs::path cfg = write_config(
      "tau.cfg", std::string(kSmallRun) + "data.noise_level = 0.1\nmethod.tau = 1.0\noutput.directory = tau\n");
  CHECK(cmd_run(cfg) == kExitConfig);
}

TEST_CASE("missing config file and unknown experiment exit 2") {
  CHECK(cmd_run(scratch_root() / "does_not_exist.cfg") == kExitConfig);
  CHECK(cmd_experiment("exp9") == kExitConfig);
}

TEST_CASE("svd writes sigma.csv and guards the size") {
  const fs::path cfg = write_config("svd.cfg", "geometry.nx = 16\noutput.directory = svd\n");
  REQUIRE(cmd_svd(cfg) == kExitOk);
  const std::string sigma = slurp(scratch_root() / "svd" / "sigma.csv");
  CHECK(sigma.rfind("k,sigma\n1,", 0) == 0);
  CHECK(slurp(scratch_root() / "svd" / "svd_summary.txt").find("slope = ") != std::string::npos);
  const fs::path big = write_config("svd_big.cfg", "geometry.nx = 512\ngeometry.ny = 8\noutput.directory = svd_big\n");
  CHECK(cmd_svd(big) == kExitConfig);
}

TEST_CASE("format_double round-trips") {
  for (double v : {0.1, 1.0 / 3.0, 6.02214076e23, -2.5e-300}) {
    CHECK(std::strtod(format_double(v).c_str(), nullptr) == v);
  }
}
