#include "cauchyls/tikhonov.hpp"

#include <algorithm>
#include <cmath>

#include "cauchyls/data_norms.hpp"

namespace cauchyls {

double resolved_eps(const TikhonovParams& p, const Grid& grid) {
  return p.eps > 0.0 ? p.eps : 2.0 * grid.hx();
}

void validate(const TikhonovParams& p, double delta) {
  if (!(p.alpha > 0.0) || !std::isfinite(p.alpha)) throw InvalidArgument("alpha must be positive");
  if (!(p.beta >= 0.0) || !std::isfinite(p.beta)) throw InvalidArgument("beta must be nonnegative");
  if (!(p.eps >= 0.0) || !std::isfinite(p.eps)) throw InvalidArgument("eps must be nonnegative (0 = two cells)");
  if (!(p.eta > 0.0)) throw InvalidArgument("eta must be positive");
  if (p.max_iters < 1) throw InvalidArgument("max_iters must be at least 1");
  if (delta > 0.0 && !(p.tau > 1.0)) {
    throw InvalidArgument("the discrepancy principle requires tau > 1 for noisy data");
  }
  if (p.target_error && !(*p.target_error > 0.0)) throw InvalidArgument("target_error must be positive");
}

TraceFn tikhonov_velocity(const LevelSetState& state, const TraceFn& residual,
                          const OperatorContext& ctx, const TikhonovParams& p) {
  // L* r = -v|Gamma2 with v from the adjoint BVP; the descent direction of
  // the data term is -H'_eps(phi) L* r.
  const TraceFn adjoint = apply_L_adjoint(ctx, residual);
  TraceFn source = adjoint;
  if (p.beta > 0.0) {
    const TraceFn curvature = curvature_term(state.phi, state.eps, p.eta, p.beta);
    for (std::size_t i = 0; i < source.size(); ++i) {
      source[i] = heaviside_eps_deriv(state.phi[i], state.eps) * (-adjoint[i] + curvature[i]);
    }
  } else {
    for (std::size_t i = 0; i < source.size(); ++i) {
      source[i] = heaviside_eps_deriv(state.phi[i], state.eps) * -adjoint[i];
    }
  }
  return solve_helmholtz_neumann(source);
}

namespace {

LevelSetState advance(const LevelSetState& state, const TraceFn& w, double alpha) {
  TraceFn phi = state.phi;
  for (std::size_t i = 0; i < phi.size(); ++i) phi[i] += w[i] / alpha;
  return LevelSetState::from_phi(std::move(phi), state.eps);
}

}  // namespace

TikhonovStep tikhonov_step(const LevelSetState& state, const CauchyData& data,
                           const OperatorContext& ctx, const TikhonovParams& p) {
  TikhonovStep out;
  out.residual = residual_trace(ctx, data, state.q);
  out.velocity = tikhonov_velocity(state, out.residual, ctx, p);
  out.state = advance(state, out.velocity, p.alpha);
  return out;
}

RunRecord run_tikhonov(const TraceFn& phi0, const CauchyData& data, const OperatorContext& ctx,
                       const TikhonovParams& p, const std::optional<TraceFn>& truth) {
  validate(p, data.delta);
  check_trace(ctx.grid(), phi0, BoundaryPart::Gamma2);
  if (truth) check_trace(ctx.grid(), *truth, BoundaryPart::Gamma2);

  const double eps = resolved_eps(p, ctx.grid());
  LevelSetState state = LevelSetState::from_phi(phi0, eps);
  RunRecord record;
  int stalled = 0;

  for (int k = 0;; ++k) {
    const TraceFn residual = residual_trace(ctx, data, state.q);
    IterationRecord entry{k, l2_norm_trace(residual), std::nullopt, component_count(state.q)};
    if (truth) {
      TraceFn diff = state.q;
      for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= (*truth)[i];
      entry.error = l2_norm_trace(diff);
    }
    record.history.push_back(entry);
    if (std::find(p.snapshot_iters.begin(), p.snapshot_iters.end(), k) != p.snapshot_iters.end()) {
      record.snapshots.push_back({k, state.phi, state.q});
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
      break;
    }

    const TraceFn w = tikhonov_velocity(state, residual, ctx, p);
    stalled = l2_norm_trace(w) <= kStagnationVelocity ? stalled + 1 : 0;
    state = advance(state, w, p.alpha);
  }
  record.final_phi = state.phi;
  record.final_q = state.q;
  return record;
}

}  // namespace cauchyls
