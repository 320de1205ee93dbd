#pragma once

#include <optional>
#include <vector>

#include "cauchyls/operator.hpp"
#include "cauchyls/run_record.hpp"

namespace cauchyls {

struct HjParams {
  double dt = 0.0;          // time per outer iteration; <= 0 picks 0.5 h / max|V|
  double eps_clamp = 0.1;   // lower bound on |2q - 1|
  double tau = 1.5;
  int max_iters = 5000;
  double cfl_max = 0.9;
  std::optional<double> target_error;
  std::vector<int> snapshot_iters;
};

void validate(const HjParams& p, double delta);

/// Velocity V = psi' with -psi'' = 2 s^{-1} L* r, psi = 0 at both ends of
/// Gamma2, where s = 2q - 1 clamped away from zero (ties go to +eps_clamp).
/// V is zeroed at the two end nodes.
TraceFn hj_velocity(const TraceFn& q, const TraceFn& residual, const OperatorContext& ctx,
                    const HjParams& p);

/// Advances phi_t + V phi_x = 0 by dt with first-order upwinding, splitting
/// dt into equal sub-steps so that max|V| dt_sub / h <= cfl_max.
TraceFn hj_transport_step(const TraceFn& phi, const TraceFn& velocity, double dt,
                          double cfl_max = 0.9);

/// First level-set method: q = H(phi) (sharp), residual, velocity,
/// transport. With truth, also logs the error identity defect.
RunRecord run_hj(const TraceFn& phi0, const CauchyData& data, const OperatorContext& ctx,
                 const HjParams& p, const std::optional<TraceFn>& truth = {});

}  // namespace cauchyls
