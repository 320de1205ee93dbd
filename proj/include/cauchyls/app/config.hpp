#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cauchyls/levelset.hpp"

namespace cauchyls::app {

/// Bad or unreadable configuration. The message names the offending key.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Method { Tikhonov, Hj };
std::string to_string(Method m);

struct RunConfig {
  // geometry
  double width = 1.0;
  double height = 0.5;
  int nx = 64;
  int ny = 0;  // 0: nx * height / width, rounded
  int data_refinement_ratio = 2;

  // method
  Method method = Method::Tikhonov;
  double alpha = 1e2;
  double beta = 1e-3;
  double eps_cells = 2.0;
  double eta = 1e-6;
  double tau = 1.5;
  double dt = 0.0;  // hj only; 0 picks the CFL-based step
  double eps_clamp = 0.1;
  int max_iters = 5000;
  std::optional<double> target_error;

  // truth and initial guess on Gamma2
  std::vector<Interval> truth;
  ShapeSpec init;

  // data
  double g1 = 0.0;  // constant Dirichlet data on Gamma1
  double noise_level = 0.0;
  std::uint64_t seed = 1;

  // output
  std::string directory = "run";
  std::vector<int> snapshot_iters;

  int resolved_ny() const;
};

/// Parses `key = value` lines; '#' starts a comment. Unknown keys, repeated
/// keys and malformed values raise ConfigError. Ranges are checked by
/// validate().
RunConfig parse_config(std::istream& in);
RunConfig load_config(const std::filesystem::path& path);

/// Checks the geometry keys only.
void validate_geometry(const RunConfig& c);
/// Checks ranges and cross-field rules (tau > 1 with noise, ...).
void validate(const RunConfig& c);

/// Resolved key = value listing of every field, in a fixed order.
std::vector<std::pair<std::string, std::string>> describe(const RunConfig& c);

/// "%.17g" formatting used by every artifact.
std::string format_double(double v);

}  // namespace cauchyls::app
