#pragma once

#include <cstdint>

#include "cauchyls/grid.hpp"
#include "cauchyls/operator.hpp"

namespace cauchyls {

/// Generates Cauchy data for a known Gamma2 flux without committing the
/// inverse crime: the forward problem (u = g1 on Gamma1, flux true_q on
/// Gamma2, zero flux on Gamma3, P u = f) is solved on `fine`, its Gamma1
/// conormal trace becomes g2, and both traces are injected onto the
/// inversion grid where z is computed. The fine grid must nest the inversion
/// grid with an integer ratio >= 1 (ratio 1 is the same-grid test mode).
CauchyData synthesize_cauchy_data(const TraceFn& true_q_fine, const TraceFn& g1_fine,
                                  const OperatorContext& fine, const OperatorContext& inversion);

struct NoisyTrace {
  TraceFn values;
  double delta = 0.0;
};

/// Adds seeded uniform white noise scaled so that ||noise||_L2 equals
/// level * ||g2||_L2 exactly; returns the perturbed trace and that delta.
NoisyTrace add_noise(const TraceFn& g2, double level, std::uint64_t seed);

/// Trapezoid L2 norm along the trace.
double l2_norm_trace(const TraceFn& t);

/// Approximate dual Sobolev norm of order s: expands t in the orthonormal
/// discrete sine basis of the part and weights mode k by
/// (1 + (k pi / length)^2)^(-s). End values do not enter.
double sobolev_dual_norm(const TraceFn& t, double s);

}  // namespace cauchyls
