#include "cauchyls/app/runner.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "cauchyls/data_norms.hpp"
#include "cauchyls/hj.hpp"
#include "cauchyls/levelset.hpp"
#include "cauchyls/tikhonov.hpp"

namespace cauchyls::app {

namespace fs = std::filesystem;

Problem build_problem(const RunConfig& c) {
  validate(c);
  const int ny = c.resolved_ny();
  const int r = c.data_refinement_ratio;
  const Grid grid(c.width, c.height, c.nx, ny);
  const Grid fine(c.width, c.height, c.nx * r, ny * r);
  const Coefficient a = Coefficient::constant(1.0);
  OperatorContext ctx(grid, a);

  CauchyData data;
  if (r == 1) {
    data = synthesize_cauchy_data(indicator_trace(grid, c.truth),
                                  constant_trace(grid, BoundaryPart::Gamma1, c.g1), ctx, ctx);
  } else {
    const OperatorContext fine_ctx(fine, a);
    data = synthesize_cauchy_data(indicator_trace(fine, c.truth),
                                  constant_trace(fine, BoundaryPart::Gamma1, c.g1), fine_ctx, ctx);
  }
  if (c.noise_level > 0.0) {
    NoisyTrace noisy = add_noise(data.g2, c.noise_level, c.seed);
    data = make_cauchy_data(ctx, data.g1, std::move(noisy.values), noisy.delta);
  }

  const double eps = c.eps_cells * grid.hx();
  TraceFn truth = indicator_trace(grid, c.truth);
  TraceFn phi0 = init_phi(grid, c.init, eps);
  return Problem{std::move(ctx), std::move(data), std::move(truth), std::move(phi0), eps};
}

RunOutcome execute(const RunConfig& c, const Problem& problem) {
  RunOutcome out;
  out.rhs_norm = l2_norm_trace(problem.data.rhs);
  const auto start = std::chrono::steady_clock::now();
  if (c.method == Method::Tikhonov) {
    TikhonovParams p;
    p.alpha = c.alpha;
    p.beta = c.beta;
    p.eps = problem.eps;
    p.eta = c.eta;
    p.tau = c.tau;
    p.max_iters = c.max_iters;
    p.target_error = c.target_error;
    p.snapshot_iters = c.snapshot_iters;
    out.record = run_tikhonov(problem.phi0, problem.data, problem.ctx, p, problem.truth);
  } else {
    HjParams p;
    p.dt = c.dt;
    p.eps_clamp = c.eps_clamp;
    p.tau = c.tau;
    p.max_iters = c.max_iters;
    p.target_error = c.target_error;
    p.snapshot_iters = c.snapshot_iters;
    out.record = run_hj(problem.phi0, problem.data, problem.ctx, p, problem.truth);
  }
  out.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

RunOutcome run_config(const RunConfig& c) { return execute(c, build_problem(c)); }

fs::path output_root() {
  const char* env = std::getenv(kOutputRootEnv);
  return env && *env ? fs::path(env) : fs::current_path();
}

fs::path output_dir(const RunConfig& c) {
  const fs::path dir(c.directory);
  return dir.is_absolute() ? dir : output_root() / dir;
}

namespace {

std::ofstream open_for_write(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

}  // namespace

void write_artifacts(const fs::path& dir, const RunConfig& c, const Problem& problem,
                     const RunOutcome& outcome) {
  fs::create_directories(dir);
  const RunRecord& rec = outcome.record;

  {
    auto out = open_for_write(dir / "history.csv");
    out << "iter,residual,error,components\n";
    for (const auto& h : rec.history) {
      out << h.iter << ',' << format_double(h.residual) << ','
          << (h.error ? format_double(*h.error) : std::string()) << ',' << h.components << '\n';
    }
  }

  const auto xs = trace_coordinates(problem.ctx.grid(), BoundaryPart::Gamma2);
  for (const auto& snap : rec.snapshots) {
    auto out = open_for_write(dir / ("snapshot_" + std::to_string(snap.iter) + ".csv"));
    out << "x,phi,q,true_q\n";
    for (std::size_t i = 0; i < xs.size(); ++i) {
      out << format_double(xs[i]) << ',' << format_double(snap.phi[i]) << ','
          << format_double(snap.q[i]) << ',' << format_double(problem.truth[i]) << '\n';
    }
  }

  const auto& last = rec.history.back();
  auto out = open_for_write(dir / "summary.txt");
  out << "stop_reason = " << to_string(rec.stop_reason) << '\n';
  out << "stop_iter = " << rec.stop_iter << '\n';
  out << "final_residual = " << format_double(last.residual) << '\n';
  out << "final_relative_residual = "
      << format_double(outcome.rhs_norm > 0.0 ? last.residual / outcome.rhs_norm : 0.0) << '\n';
  out << "final_error = " << (last.error ? format_double(*last.error) : "none") << '\n';
  out << "final_components = " << last.components << '\n';
  out << "rhs_norm = " << format_double(outcome.rhs_norm) << '\n';
  out << "delta = " << format_double(problem.data.delta) << '\n';
  out << "discrepancy_level = " << format_double(c.tau * problem.data.delta) << '\n';
  out << "eps = " << format_double(problem.eps) << '\n';
  out << "wall_time_s = " << format_double(outcome.wall_seconds) << '\n';
  for (const auto& [key, value] : describe(c)) out << key << " = " << value << '\n';
}

RunConfig exp1_config() {
  RunConfig c;
  c.height = 0.5;
  c.alpha = 200.0;
  c.beta = 1e-5;  // the default 1e-3 penalizes the extra perimeter enough to block the split
  c.max_iters = 20000;
  c.truth = {{0.2, 0.4}, {0.6, 0.8}};
  c.init.intervals = {{0.15, 0.85}};
  c.directory = "exp1";
  c.snapshot_iters = {0, 500, 5000, 10200, 11000, 15000, 20000};
  return c;
}

RunConfig exp2_config(double height) {
  RunConfig c;
  c.height = height;
  c.max_iters = 5000;
  c.truth = {{0.35, 0.65}};
  c.init.intervals = {{0.4, 0.6}};
  c.directory = height == 1.0 ? "exp2/height_1" : "exp2/height_0.5";
  c.snapshot_iters = {0, 30, 100, 300, 500, 1000, 2000, 3000};
  return c;
}

RunConfig exp3_config() {
  RunConfig c = exp2_config(0.5);
  c.noise_level = 0.1;
  c.tau = 1.5;
  c.seed = 42;
  c.directory = "exp3";
  c.snapshot_iters = {0, 30, 100, 300, 500};
  return c;
}

std::optional<double> Exp2Comparison::ratio() const {
  if (!iters_height_1 || !iters_height_05) return std::nullopt;
  if (*iters_height_05 == 0) return std::nullopt;
  return static_cast<double>(*iters_height_1) / *iters_height_05;
}

Exp2Comparison compare_exp2(const RunOutcome& height_1, const RunOutcome& height_05,
                            double threshold_factor) {
  Exp2Comparison cmp;
  cmp.threshold_factor = threshold_factor;
  cmp.iters_height_1 = height_1.record.first_iter_with_residual(threshold_factor * height_1.rhs_norm);
  cmp.iters_height_05 = height_05.record.first_iter_with_residual(threshold_factor * height_05.rhs_norm);
  return cmp;
}

SpectrumReport spectrum_for(const RunConfig& c) {
  validate_geometry(c);
  if (c.nx > kMaxDenseNx) {
    throw ConfigError("geometry.nx: the spectrum is limited to nx <= " + std::to_string(kMaxDenseNx));
  }
  const OperatorContext ctx(Grid(c.width, c.height, c.nx, c.resolved_ny()), Coefficient::constant(1.0));
  SpectrumReport rep;
  rep.sigma = operator_singular_values(ctx);
  rep.fit = fit_log_decay(rep.sigma, 2, 15);
  return rep;
}

namespace {

std::string optional_int(const std::optional<int>& v) { return v ? std::to_string(*v) : "none"; }

// Maps library exceptions onto exit codes.
template <typename F>
int guarded(const std::string& stage, F&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const InvalidArgument& e) {
    std::cerr << "invalid parameter (" << stage << "): " << e.what() << '\n';
    return kExitConfig;
  } catch (const SolverError& e) {
    std::cerr << "solver failure (" << stage << "): " << e.what() << '\n';
    return kExitSolver;
  } catch (const std::exception& e) {
    std::cerr << "error (" << stage << "): " << e.what() << '\n';
    return kExitSolver;
  }
}

RunOutcome run_and_write(const RunConfig& c, const fs::path& dir) {
  const Problem problem = build_problem(c);
  RunOutcome outcome = execute(c, problem);
  write_artifacts(dir, c, problem, outcome);
  const auto& last = outcome.record.history.back();
  std::cout << dir.string() << ": stop=" << to_string(outcome.record.stop_reason)
            << " iter=" << outcome.record.stop_iter << " residual=" << format_double(last.residual);
  if (last.error) std::cout << " error=" << format_double(*last.error);
  std::cout << " components=" << last.components << '\n';
  return outcome;
}

}  // namespace

int cmd_run(const fs::path& config_path) {
  return guarded("solve", [&] {
    const RunConfig c = load_config(config_path);
    run_and_write(c, output_dir(c));
    return kExitOk;
  });
}

int cmd_experiment(const std::string& name) {
  return guarded(name, [&] {
    if (name == "exp1") {
      run_and_write(exp1_config(), output_dir(exp1_config()));
    } else if (name == "exp2") {
      const RunConfig c1 = exp2_config(1.0);
      const RunConfig c05 = exp2_config(0.5);
      const RunOutcome o1 = run_and_write(c1, output_dir(c1));
      const RunOutcome o05 = run_and_write(c05, output_dir(c05));
      const Exp2Comparison cmp = compare_exp2(o1, o05);
      RunConfig parent;
      parent.directory = "exp2";
      const fs::path dir = output_dir(parent);
      auto out = open_for_write(dir / "comparison.txt");
      out << "threshold_factor = " << format_double(cmp.threshold_factor) << '\n';
      out << "iters_height_1 = " << optional_int(cmp.iters_height_1) << '\n';
      out << "iters_height_0.5 = " << optional_int(cmp.iters_height_05) << '\n';
      out << "ratio = " << (cmp.ratio() ? format_double(*cmp.ratio()) : "none") << '\n';
      std::cout << "exp2: iterations to residual <= " << format_double(cmp.threshold_factor)
                << " * ||rhs||: height 1.0 -> " << optional_int(cmp.iters_height_1)
                << ", height 0.5 -> " << optional_int(cmp.iters_height_05) << '\n';
    } else if (name == "exp3") {
      run_and_write(exp3_config(), output_dir(exp3_config()));
    } else {
      throw ConfigError("experiment: unknown name '" + name + "' (expected exp1, exp2 or exp3)");
    }
    return kExitOk;
  });
}

int cmd_svd(const fs::path& config_path) {
  return guarded("svd", [&] {
    const RunConfig c = load_config(config_path);
    const SpectrumReport rep = spectrum_for(c);
    const fs::path dir = output_dir(c);
    fs::create_directories(dir);
    {
      auto out = open_for_write(dir / "sigma.csv");
      out << "k,sigma\n";
      for (std::size_t k = 0; k < rep.sigma.size(); ++k) {
        out << k + 1 << ',' << format_double(rep.sigma[k]) << '\n';
      }
    }
    auto out = open_for_write(dir / "svd_summary.txt");
    out << "fit_first_k = 2\nfit_last_k = 15\n";
    out << "slope = " << format_double(rep.fit.slope) << '\n';
    out << "intercept = " << format_double(rep.fit.intercept) << '\n';
    for (const auto& [key, value] : describe(c)) {
      if (key.rfind("geometry.", 0) == 0) out << key << " = " << value << '\n';
    }
    std::cout << "slope of log sigma_k over k = 2..15: " << format_double(rep.fit.slope) << '\n';
    return kExitOk;
  });
}

}  // namespace cauchyls::app
