// Acceptance checks, one line per criterion. Exit status is the number of
// failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "cauchyls/app/runner.hpp"
#include "cauchyls/data_norms.hpp"
#include "cauchyls/hj.hpp"
#include "cauchyls/levelset.hpp"
#include "cauchyls/pde.hpp"

using namespace cauchyls;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// ---------------------------------------------------------------- 1
Outcome pde_convergence() {
  const auto exact = [](double x, double y) { return std::sin(kPi * x) * std::sinh(kPi * y); };
  double err[2] = {0, 0}, terr[2] = {0, 0};
  for (int s = 0; s < 2; ++s) {
    const int n = s == 0 ? 32 : 64;
    const Grid g(1.0, 1.0, n, n);
    const BvpSpec spec{g,
                       Coefficient::constant(1.0),
                       std::nullopt,
                       BoundaryCondition::dirichlet(zero_trace(g, BoundaryPart::Gamma1)),
                       BoundaryCondition::neumann(sample_trace(g, BoundaryPart::Gamma2, [](double x) {
                         return kPi * std::sin(kPi * x) * std::cosh(kPi);
                       })),
                       BoundaryCondition::dirichlet(zero_trace(g, BoundaryPart::Gamma3))};
    const Field u = solve_mixed_bvp(spec);
    for (int j = 1; j < n; ++j) {
      for (int i = 1; i < n; ++i) err[s] = std::max(err[s], std::abs(u(i, j) - exact(g.x(i), g.y(j))));
    }
    const TraceFn flux = neumann_trace(u, Coefficient::constant(1.0), BoundaryPart::Gamma1);
    const auto xs = trace_coordinates(g, BoundaryPart::Gamma1);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      terr[s] = std::max(terr[s], std::abs(flux[i] + kPi * std::sin(kPi * xs[i])));
    }
  }
  const double p = std::log2(err[0] / err[1]);
  const double pt = std::log2(terr[0] / terr[1]);
  return {p >= 1.8 && pt >= 1.8, fmt("interior order %.3f, Neumann-trace order %.3f", p, pt)};
}

// ---------------------------------------------------------------- 2
double adjoint_gap(int nx) {
  const OperatorContext ctx(Grid(1.0, 0.5, nx, nx / 2), Coefficient::constant(1.0));
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const auto random_trace = [&](BoundaryPart part) {
    double c[9];
    for (double& x : c) x = u(rng);
    return sample_trace(ctx.grid(), part, [&](double x) {
      double s = 0.0;
      for (int k = 0; k < 9; ++k) s += c[k] * std::cos(k * kPi * x) / (1.0 + k);
      return s;
    });
  };
  double worst = 0.0;
  for (int t = 0; t < 10; ++t) {
    const TraceFn q = random_trace(BoundaryPart::Gamma2);
    const TraceFn r = random_trace(BoundaryPart::Gamma1);
    const double gap = std::abs(trace_dot(apply_L(ctx, q), r) - trace_dot(q, apply_L_adjoint(ctx, r)));
    worst = std::max(worst, gap / (l2_norm_trace(q) * l2_norm_trace(r)));
  }
  return worst;
}

Outcome adjoint_identity() {
  const double g64 = adjoint_gap(64), g128 = adjoint_gap(128);
  return {g64 <= 5e-2 && g128 <= 0.6 * g64,
          fmt("max relative gap %.3e (nx=64), %.3e (nx=128), ratio %.3f", g64, g128, g128 / g64)};
}

// ---------------------------------------------------------------- 3
Outcome spectral_decay() {
  app::RunConfig c;
  c.nx = 64;
  c.height = 0.5;
  const app::SpectrumReport s05 = app::spectrum_for(c);
  c.height = 1.0;
  const app::SpectrumReport s1 = app::spectrum_for(c);
  const double t05 = -kPi * 0.5, t1 = -kPi * 1.0;
  const double e05 = std::abs(s05.fit.slope - t05) / std::abs(t05);
  const double e1 = std::abs(s1.fit.slope - t1) / std::abs(t1);
  const double q05 = s05.sigma[9] / s05.sigma[1], q1 = s1.sigma[9] / s1.sigma[1];
  return {e05 <= 0.15 && e1 <= 0.15 && q1 < q05,
          fmt("slope %.4f (H=0.5, %.1f%% off), %.4f (H=1, %.1f%% off); sigma10/sigma2 %.3e vs %.3e",
              s05.fit.slope, 100 * e05, s1.fit.slope, 100 * e1, q05, q1)};
}

// ---------------------------------------------------------------- 4
Outcome experiment_1() {
  const app::RunOutcome o = app::run_config(app::exp1_config());
  const auto& h = o.record.history;
  std::optional<int> first_two;
  bool seen_one = false;
  for (const auto& e : h) {
    if (e.components == 1) seen_one = true;
    if (seen_one && e.components == 2) {
      first_two = e.iter;
      break;
    }
  }
  const double err = *h.back().error;
  return {first_two.has_value() && err < 5e-2,
          fmt("1 -> 2 transition %s (iter %d); final error %.4f after %d iters (need < 0.05)",
              first_two ? "seen" : "not seen", first_two.value_or(-1), err, o.record.stop_iter)};
}

// ---------------------------------------------------------------- 5
Outcome experiment_2() {
  const app::RunOutcome o1 = app::run_config(app::exp2_config(1.0));
  const app::RunOutcome o05 = app::run_config(app::exp2_config(0.5));
  const app::Exp2Comparison cmp = app::compare_exp2(o1, o05);
  const auto ratio = cmp.ratio();
  return {ratio && *ratio >= 3.0,
          fmt("iters to residual <= 1e-3*||rhs||: height 1.0 -> %d, height 0.5 -> %d, ratio %.3f (need >= 3)",
              cmp.iters_height_1.value_or(-1), cmp.iters_height_05.value_or(-1), ratio.value_or(NAN))};
}

// ---------------------------------------------------------------- 6
std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome experiment_3() {
  const fs::path root = fs::temp_directory_path() / "cauchyls_acceptance";
  const app::RunConfig c = app::exp3_config();
  std::string histories[2];
  app::RunOutcome first;
  double level = 0.0;
  for (int rep = 0; rep < 2; ++rep) {
    const app::Problem problem = app::build_problem(c);
    const app::RunOutcome o = app::execute(c, problem);
    const fs::path dir = root / ("exp3_" + std::to_string(rep));
    app::write_artifacts(dir, c, problem, o);
    histories[rep] = read_file(dir / "history.csv");
    if (rep == 0) {
      first = o;
      level = c.tau * problem.data.delta;
    }
  }
  const auto& last = first.record.history.back();
  const bool stop_ok = first.record.stop_reason == StopReason::Discrepancy;
  const bool same = !histories[0].empty() && histories[0] == histories[1];
  return {stop_ok && last.residual <= level && *last.error <= 0.15 && same,
          fmt("stop=%s at iter %d, residual %.4e <= tau*delta %.4e, error %.4f, rerun %s",
              to_string(first.record.stop_reason).c_str(), first.record.stop_iter, last.residual, level,
              *last.error, same ? "byte-identical" : "DIFFERS")};
}

// ---------------------------------------------------------------- 7
Outcome hj_monotonicity() {
  app::RunConfig c;
  c.height = 0.5;
  c.nx = 64;
  c.data_refinement_ratio = 1;
  c.method = app::Method::Hj;
  c.max_iters = 300;
  c.truth = {{0.375, 0.625}};
  c.init.intervals = {{0.25, 0.75}};
  const app::RunOutcome o = app::run_config(c);
  const auto& h = o.record.history;
  int nonincreasing = 0, residual_ok = 0;
  for (std::size_t k = 1; k < h.size(); ++k) {
    if (*h[k].error <= *h[k - 1].error) ++nonincreasing;
    if (h[k].residual <= h[k - 1].residual * (1.0 + 1e-3)) ++residual_ok;
  }
  const int steps = static_cast<int>(h.size()) - 1;
  const bool decreased = *h.back().error < *h.front().error;
  return {steps > 0 && decreased && nonincreasing >= 0.9 * steps && residual_ok == steps,
          fmt("error %.4f -> %.4f over %d steps (%s); non-increasing in %d/%d; residual monotone in %d/%d",
              *h.front().error, *h.back().error, steps, to_string(o.record.stop_reason).c_str(),
              nonincreasing, steps, residual_ok, steps)};
}

// ---------------------------------------------------------------- 8
Outcome unit_invariants() {
  std::string failed;
  const auto expect = [&](bool ok, const char* what) {
    if (!ok) failed += std::string(failed.empty() ? "" : ", ") + what;
  };

  const double eps = 0.1;
  expect(heaviside_eps(-2 * eps, eps) == 0.0 && heaviside_eps(0.0, eps) == 1.0 &&
             std::abs(heaviside_eps(-eps / 2, eps) - 0.5) < 1e-15,
         "heaviside values");

  // Helmholtz cosine modes: Richardson extrapolation of n = 128, 256.
  double worst = 0.0;
  for (int k = 1; k <= 3; ++k) {
    const auto f = [k](double x) { return std::cos(k * kPi * x); };
    const Grid g128(1.0, 0.5, 128, 64), g256(1.0, 0.5, 256, 128);
    const TraceFn w128 = solve_helmholtz_neumann(sample_trace(g128, BoundaryPart::Gamma2, f));
    const TraceFn w256 = solve_helmholtz_neumann(sample_trace(g256, BoundaryPart::Gamma2, f));
    const double amp = 1.0 / (1.0 + k * k * kPi * kPi);
    for (std::size_t i = 0; i < w128.size(); ++i) {
      const double r = (4.0 * w256[2 * i] - w128[i]) / 3.0;
      worst = std::max(worst, std::abs(r - amp * f(i / 128.0)) / amp);
    }
  }
  expect(worst <= 1e-6, "helmholtz modes");

  const Grid g(1.0, 0.5, 64, 32);
  const TraceFn rhs = sample_trace(g, BoundaryPart::Gamma2, [](double x) { return x < 0.4 ? 1.0 : -x * x; });
  const auto mean = [](const TraceFn& t) {
    const auto w = trace_weights(t);
    double s = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) s += w[i] * t[i];
    return s;
  };
  expect(std::abs(mean(solve_helmholtz_neumann(rhs)) - mean(rhs)) <= 1e-12 * (1.0 + std::abs(mean(rhs))),
         "helmholtz mean");

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  bool max_ok = true;
  for (int t = 0; t < 50; ++t) {
    TraceFn phi = zero_trace(g, BoundaryPart::Gamma2), v = zero_trace(g, BoundaryPart::Gamma2);
    for (auto& x : phi.values) x = u(rng);
    for (auto& x : v.values) x = 5.0 * u(rng);
    const TraceFn out = hj_transport_step(phi, v, 0.03);
    const auto [lo, hi] = std::minmax_element(phi.values.begin(), phi.values.end());
    for (double x : out.values) max_ok = max_ok && x >= *lo - 1e-14 && x <= *hi + 1e-14;
  }
  expect(max_ok, "upwind maximum principle");

  const Grid coarse(1.0, 0.5, 32, 16), fine(1.0, 0.5, 128, 64);
  const TraceFn t = sample_trace(coarse, BoundaryPart::Gamma2, [](double x) { return std::exp(x) - x * x; });
  expect(restrict_trace(prolong_trace(t, fine), coarse).values == t.values, "restrict/prolong identity");

  const TraceFn g2 = sample_trace(g, BoundaryPart::Gamma1, [](double x) { return std::cos(2 * x); });
  const NoisyTrace a = add_noise(g2, 0.1, 77), b = add_noise(g2, 0.1, 77);
  expect(a.values.values == b.values.values && a.delta == b.delta, "noise determinism");

  return {failed.empty(), failed.empty() ? fmt("all six suites hold (Helmholtz Richardson error %.2e)", worst)
                                         : "failed: " + failed};
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Outcome()> check;
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {1, "PDE convergence", 5.0, pde_convergence},
      {2, "adjoint identity", 10.0, adjoint_identity},
      {3, "spectral ill-posedness", 30.0, spectral_decay},
      {4, "experiment 1 (non-connected flux)", 120.0, experiment_1},
      {5, "experiment 2 (ill-posedness vs iterations)", 180.0, experiment_2},
      {6, "experiment 3 (noisy data)", 120.0, experiment_3},
      {7, "first-method monotonicity", 120.0, hj_monotonicity},
      {8, "unit invariant suites", 10.0, unit_invariants},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= c.budget_s;
    const bool pass = o.pass && in_time;
    if (!pass) ++failures;
    std::printf("[%s] criterion %d: %s -- %s; %.2f s (budget %.0f s)%s\n", pass ? "PASS" : "FAIL", c.id,
                c.name, o.detail.c_str(), secs, c.budget_s, in_time ? "" : " OVER BUDGET");
    std::fflush(stdout);
  }
  std::printf("%d of 8 criteria passed\n", 8 - failures);
  return failures;
}
