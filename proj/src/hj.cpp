#include "cauchyls/hj.hpp"

#include <algorithm>
#include <cmath>

#include "cauchyls/data_norms.hpp"
#include "cauchyls/levelset.hpp"
#include "cauchyls/tikhonov.hpp"

namespace cauchyls {

void validate(const HjParams& p, double delta) {
  if (!(p.dt >= 0.0) || !std::isfinite(p.dt)) throw InvalidArgument("dt must be nonnegative (0 = automatic)");
  if (!(p.eps_clamp > 0.0) || p.eps_clamp > 1.0) throw InvalidArgument("eps_clamp must lie in (0, 1]");
  if (!(p.cfl_max > 0.0) || p.cfl_max > 0.9) throw InvalidArgument("cfl_max must lie in (0, 0.9]");
  if (p.max_iters < 1) throw InvalidArgument("max_iters must be at least 1");
  if (delta > 0.0 && !(p.tau > 1.0)) {
    throw InvalidArgument("the discrepancy principle requires tau > 1 for noisy data");
  }
  if (p.target_error && !(*p.target_error > 0.0)) throw InvalidArgument("target_error must be positive");
}

TraceFn hj_velocity(const TraceFn& q, const TraceFn& residual, const OperatorContext& ctx,
                    const HjParams& p) {
  check_trace(ctx.grid(), q, BoundaryPart::Gamma2);
  const TraceFn adjoint = apply_L_adjoint(ctx, residual);
  TraceFn source = adjoint;
  for (std::size_t i = 0; i < source.size(); ++i) {
    double s = 2.0 * q[i] - 1.0;
    if (std::abs(s) < p.eps_clamp) s = s < 0.0 ? -p.eps_clamp : p.eps_clamp;
    source[i] = 2.0 / s * adjoint[i];
  }
  TraceFn v = centered_derivative(solve_poisson_dirichlet(source));
  v.values.front() = 0.0;
  v.values.back() = 0.0;
  return v;
}

TraceFn hj_transport_step(const TraceFn& phi, const TraceFn& velocity, double dt, double cfl_max) {
  if (phi.size() != velocity.size()) throw InvalidArgument("transport: phi/velocity size mismatch");
  if (!(dt >= 0.0)) throw InvalidArgument("transport: dt must be nonnegative");
  if (!(cfl_max > 0.0)) throw InvalidArgument("transport: cfl_max must be positive");
  const double h = phi.spacing;
  double vmax = 0.0;
  for (double v : velocity.values) vmax = std::max(vmax, std::abs(v));
  const double courant = vmax * dt / h;
  const int substeps = std::max(1, static_cast<int>(std::ceil(courant / cfl_max)));
  const double sub_dt = dt / substeps;

  const std::size_t n = phi.size();
  TraceFn cur = phi;
  TraceFn next = phi;
  for (int s = 0; s < substeps; ++s) {
    for (std::size_t i = 0; i < n; ++i) {
      const double backward = i > 0 ? (cur[i] - cur[i - 1]) / h : 0.0;
      const double forward = i + 1 < n ? (cur[i + 1] - cur[i]) / h : 0.0;
      const double v = velocity[i];
      next[i] = cur[i] - sub_dt * (std::max(v, 0.0) * backward + std::min(v, 0.0) * forward);
    }
    std::swap(cur, next);
  }
  return cur;
}

RunRecord run_hj(const TraceFn& phi0, const CauchyData& data, const OperatorContext& ctx,
                 const HjParams& p, const std::optional<TraceFn>& truth) {
  validate(p, data.delta);
  check_trace(ctx.grid(), phi0, BoundaryPart::Gamma2);
  if (truth) check_trace(ctx.grid(), *truth, BoundaryPart::Gamma2);

  const double h = ctx.grid().hx();
  TraceFn phi = phi0;
  RunRecord record;
  int stalled = 0;
  double prev_error_sq = 0.0;
  double prev_residual_sq = 0.0;
  double prev_dt = 0.0;

  for (int k = 0;; ++k) {
    const TraceFn q = apply_heaviside(phi);
    const TraceFn residual = residual_trace(ctx, data, q);
    IterationRecord entry{k, l2_norm_trace(residual), std::nullopt, component_count(q)};
    if (truth) {
      TraceFn diff = q;
      for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= (*truth)[i];
      entry.error = l2_norm_trace(diff);
      const double error_sq = *entry.error * *entry.error;
      if (k > 0) {
        record.identity_defect.push_back((error_sq - prev_error_sq) / prev_dt + 2.0 * prev_residual_sq);
      }
      prev_error_sq = error_sq;
    }
    record.history.push_back(entry);
    if (std::find(p.snapshot_iters.begin(), p.snapshot_iters.end(), k) != p.snapshot_iters.end()) {
      record.snapshots.push_back({k, phi, q});
    }

    std::optional<StopReason> stop;
    if (data.delta > 0.0 && entry.residual <= p.tau * data.delta) {
      stop = StopReason::Discrepancy;
    } else if (p.target_error && entry.error && *entry.error <= *p.target_error) {
      stop = StopReason::TargetError;
    } else if (stalled >= kStagnationSteps) {
      stop = StopReason::Stagnation;
    } else if (k >= p.max_iters) {
      stop = StopReason::MaxIters;
    }
    if (stop) {
      record.stop_reason = *stop;
      record.stop_iter = k;
      record.final_q = q;
      break;
    }

    const TraceFn v = hj_velocity(q, residual, ctx, p);
    double vmax = 0.0;
    for (double x : v.values) vmax = std::max(vmax, std::abs(x));
    stalled = vmax <= kStagnationVelocity ? stalled + 1 : 0;
    const double dt = p.dt > 0.0 ? p.dt : 0.5 * h / std::max(vmax, 1e-12);
    phi = hj_transport_step(phi, v, dt, p.cfl_max);
    prev_residual_sq = entry.residual * entry.residual;
    prev_dt = dt;
  }
  record.final_phi = phi;
  return record;
}

}  // namespace cauchyls
