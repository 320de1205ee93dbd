#include "cauchyls/app/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace cauchyls::app {

std::string to_string(Method m) { return m == Method::Tikhonov ? "tikhonov" : "hj"; }

int RunConfig::resolved_ny() const {
  if (ny > 0) return ny;
  return static_cast<int>(std::lround(nx * height / width));
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out)) {
    throw ConfigError(key + ": expected a number, got '" + v + "'");
  }
  return out;
}

long long to_integer(const std::string& key, const std::string& v) {
  long long out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw ConfigError(key + ": expected an integer, got '" + v + "'");
  }
  return out;
}

int to_int(const std::string& key, const std::string& v) {
  const long long x = to_integer(key, v);
  if (x < -1000000000LL || x > 1000000000LL) throw ConfigError(key + ": integer out of range");
  return static_cast<int>(x);
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> items;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

// "0.2:0.4, 0.6:0.8"
std::vector<Interval> to_intervals(const std::string& key, const std::string& v) {
  std::vector<Interval> out;
  for (const auto& item : split_list(v)) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw ConfigError(key + ": intervals are written lo:hi");
    Interval iv{to_double(key, trim(item.substr(0, colon))), to_double(key, trim(item.substr(colon + 1)))};
    if (!(iv.lo < iv.hi)) throw ConfigError(key + ": interval needs lo < hi");
    out.push_back(iv);
  }
  return out;
}

std::string intervals_text(const std::vector<Interval>& ivs) {
  std::string s;
  for (const auto& iv : ivs) {
    if (!s.empty()) s += ", ";
    s += format_double(iv.lo) + ":" + format_double(iv.hi);
  }
  return s;
}

using Setter = std::function<void(RunConfig&, const std::string& key, const std::string& value)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"geometry.width", [](RunConfig& c, auto& k, auto& v) { c.width = to_double(k, v); }},
      {"geometry.height", [](RunConfig& c, auto& k, auto& v) { c.height = to_double(k, v); }},
      {"geometry.nx", [](RunConfig& c, auto& k, auto& v) { c.nx = to_int(k, v); }},
      {"geometry.ny", [](RunConfig& c, auto& k, auto& v) { c.ny = to_int(k, v); }},
      {"geometry.data_refinement_ratio",
       [](RunConfig& c, auto& k, auto& v) { c.data_refinement_ratio = to_int(k, v); }},
      {"method.name",
       [](RunConfig& c, auto& k, auto& v) {
         if (v == "tikhonov") c.method = Method::Tikhonov;
         else if (v == "hj") c.method = Method::Hj;
         else throw ConfigError(k + ": expected tikhonov or hj, got '" + v + "'");
       }},
      {"method.alpha", [](RunConfig& c, auto& k, auto& v) { c.alpha = to_double(k, v); }},
      {"method.beta", [](RunConfig& c, auto& k, auto& v) { c.beta = to_double(k, v); }},
      {"method.eps_cells", [](RunConfig& c, auto& k, auto& v) { c.eps_cells = to_double(k, v); }},
      {"method.eta", [](RunConfig& c, auto& k, auto& v) { c.eta = to_double(k, v); }},
      {"method.tau", [](RunConfig& c, auto& k, auto& v) { c.tau = to_double(k, v); }},
      {"method.dt", [](RunConfig& c, auto& k, auto& v) { c.dt = to_double(k, v); }},
      {"method.eps_clamp", [](RunConfig& c, auto& k, auto& v) { c.eps_clamp = to_double(k, v); }},
      {"method.max_iters", [](RunConfig& c, auto& k, auto& v) { c.max_iters = to_int(k, v); }},
      {"method.target_error", [](RunConfig& c, auto& k, auto& v) { c.target_error = to_double(k, v); }},
      {"truth.intervals", [](RunConfig& c, auto& k, auto& v) { c.truth = to_intervals(k, v); }},
      {"init.intervals", [](RunConfig& c, auto& k, auto& v) { c.init.intervals = to_intervals(k, v); }},
      {"init.constant",
       [](RunConfig& c, auto& k, auto& v) {
         c.init.use_constant = true;
         c.init.constant = to_double(k, v);
       }},
      {"data.g1", [](RunConfig& c, auto& k, auto& v) { c.g1 = to_double(k, v); }},
      {"data.noise_level", [](RunConfig& c, auto& k, auto& v) { c.noise_level = to_double(k, v); }},
      {"data.seed",
       [](RunConfig& c, auto& k, auto& v) {
         const long long s = to_integer(k, v);
         if (s < 0) throw ConfigError(k + ": seed must be nonnegative");
         c.seed = static_cast<std::uint64_t>(s);
       }},
      {"output.directory", [](RunConfig& c, auto&, auto& v) { c.directory = v; }},
      {"output.snapshot_iters",
       [](RunConfig& c, auto& k, auto& v) {
         c.snapshot_iters.clear();
         for (const auto& item : split_list(v)) c.snapshot_iters.push_back(to_int(k, item));
       }},
  };
  return table;
}

}  // namespace

RunConfig parse_config(std::istream& in) {
  RunConfig c;
  std::set<std::string> seen;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end()) throw ConfigError(key + ": unknown key");
    if (!seen.insert(key).second) throw ConfigError(key + ": given twice");
    if (value.empty()) throw ConfigError(key + ": missing value");
    it->second(c, key, value);
  }
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  return parse_config(in);
}

void validate_geometry(const RunConfig& c) {
  if (!(c.width > 0.0)) throw ConfigError("geometry.width: must be positive");
  if (!(c.height > 0.0)) throw ConfigError("geometry.height: must be positive");
  if (c.nx < 4) throw ConfigError("geometry.nx: must be at least 4");
  if (c.ny != 0 && c.ny < 4) throw ConfigError("geometry.ny: must be at least 4 (or 0 for nx*height)");
  if (c.resolved_ny() < 4) throw ConfigError("geometry.ny: resolves to fewer than 4 cells");
  if (c.data_refinement_ratio < 1 || c.data_refinement_ratio > 16) {
    throw ConfigError("geometry.data_refinement_ratio: must lie in [1, 16]");
  }
}

void validate(const RunConfig& c) {
  validate_geometry(c);
  if (!(c.alpha > 0.0)) throw ConfigError("method.alpha: must be positive");
  if (!(c.beta >= 0.0)) throw ConfigError("method.beta: must be nonnegative");
  if (!(c.eps_cells > 0.0)) throw ConfigError("method.eps_cells: must be positive");
  if (!(c.eta > 0.0)) throw ConfigError("method.eta: must be positive");
  if (!(c.dt >= 0.0)) throw ConfigError("method.dt: must be nonnegative");
  if (!(c.eps_clamp > 0.0 && c.eps_clamp <= 1.0)) throw ConfigError("method.eps_clamp: must lie in (0, 1]");
  if (c.max_iters < 1) throw ConfigError("method.max_iters: must be at least 1");
  if (c.target_error && !(*c.target_error > 0.0)) throw ConfigError("method.target_error: must be positive");
  if (!(c.noise_level >= 0.0)) throw ConfigError("data.noise_level: must be nonnegative");
  if (c.noise_level > 0.0 && !(c.tau > 1.0)) {
    throw ConfigError("method.tau: the discrepancy principle needs tau > 1 when data.noise_level > 0");
  }
  if (c.truth.empty()) throw ConfigError("truth.intervals: at least one interval is required");
  if (!c.init.use_constant && c.init.intervals.empty()) {
    throw ConfigError("init.intervals: give init.intervals or init.constant");
  }
  for (const auto& iv : c.truth) {
    if (iv.lo < 0.0 || iv.hi > c.width) throw ConfigError("truth.intervals: must lie inside [0, width]");
  }
  for (int s : c.snapshot_iters) {
    if (s < 0) throw ConfigError("output.snapshot_iters: iterations must be nonnegative");
  }
  if (c.directory.empty()) throw ConfigError("output.directory: must not be empty");
}

std::vector<std::pair<std::string, std::string>> describe(const RunConfig& c) {
  std::string snaps;
  for (int s : c.snapshot_iters) snaps += (snaps.empty() ? "" : ", ") + std::to_string(s);
  return {
      {"geometry.width", format_double(c.width)},
      {"geometry.height", format_double(c.height)},
      {"geometry.nx", std::to_string(c.nx)},
      {"geometry.ny", std::to_string(c.resolved_ny())},
      {"geometry.data_refinement_ratio", std::to_string(c.data_refinement_ratio)},
      {"method.name", to_string(c.method)},
      {"method.alpha", format_double(c.alpha)},
      {"method.beta", format_double(c.beta)},
      {"method.eps_cells", format_double(c.eps_cells)},
      {"method.eta", format_double(c.eta)},
      {"method.tau", format_double(c.tau)},
      {"method.dt", format_double(c.dt)},
      {"method.eps_clamp", format_double(c.eps_clamp)},
      {"method.max_iters", std::to_string(c.max_iters)},
      {"method.target_error", c.target_error ? format_double(*c.target_error) : "none"},
      {"truth.intervals", intervals_text(c.truth)},
      {"init.intervals", c.init.use_constant ? "none" : intervals_text(c.init.intervals)},
      {"init.constant", c.init.use_constant ? format_double(c.init.constant) : "none"},
      {"data.g1", format_double(c.g1)},
      {"data.noise_level", format_double(c.noise_level)},
      {"data.seed", std::to_string(c.seed)},
      {"output.directory", c.directory},
      {"output.snapshot_iters", snaps.empty() ? "none" : snaps},
  };
}

}  // namespace cauchyls::app
