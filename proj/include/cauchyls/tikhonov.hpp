#pragma once

#include <optional>
#include <vector>

#include "cauchyls/levelset.hpp"
#include "cauchyls/operator.hpp"
#include "cauchyls/run_record.hpp"

namespace cauchyls {

struct TikhonovParams {
  double alpha = 1e2;  // inverse time step
  double beta = 1e-3;  // TV scale
  double eps = 0.0;    // smoothing width; <= 0 means 2 grid cells
  double eta = 1e-6;   // gradient regularization in the TV term
  double tau = 1.5;    // discrepancy constant
  int max_iters = 5000;
  std::optional<double> target_error;
  std::vector<int> snapshot_iters;
};

/// Velocity norms at or below this count as a stalled update.
inline constexpr double kStagnationVelocity = 1e-14;
inline constexpr int kStagnationSteps = 10;

/// Smoothing width actually used for a grid: p.eps, or two cells.
double resolved_eps(const TikhonovParams& p, const Grid& grid);

/// Throws InvalidArgument for out-of-range parameters.
void validate(const TikhonovParams& p, double delta);

struct TikhonovStep {
  LevelSetState state;  // phi_{k+1}, q_{k+1}
  TraceFn residual;     // r_k = L H_eps(phi_k) - rhs
  TraceFn velocity;     // w_k
};

/// Velocity of the level-set update for a given residual:
/// w = (I - d2/dx2)^{-1} ( H'_eps(phi) [ -L* r + curvature ] ).
TraceFn tikhonov_velocity(const LevelSetState& state, const TraceFn& residual,
                          const OperatorContext& ctx, const TikhonovParams& p);

/// One iteration: residual, adjoint, velocity, and phi += w / alpha.
TikhonovStep tikhonov_step(const LevelSetState& state, const CauchyData& data,
                           const OperatorContext& ctx, const TikhonovParams& p);

/// Iterates tikhonov_step from phi0 until the discrepancy principle
/// (delta > 0), the target error, stagnation or max_iters stops it.
RunRecord run_tikhonov(const TraceFn& phi0, const CauchyData& data, const OperatorContext& ctx,
                       const TikhonovParams& p, const std::optional<TraceFn>& truth = {});

}  // namespace cauchyls
