#pragma once

#include <vector>

#include "cauchyls/grid.hpp"

namespace cauchyls {

/// Piecewise-linear smoothed Heaviside: 0 below -eps, 1 + t/eps on
/// [-eps, 0], 1 from 0 on.
double heaviside_eps(double t, double eps);

/// Derivative of heaviside_eps; 1/eps on the closed band [-eps, 0] (kinks
/// included), 0 elsewhere.
double heaviside_eps_deriv(double t, double eps);

/// Sharp projector: 1 for t >= 0, else 0.
inline double heaviside(double t) { return t >= 0.0 ? 1.0 : 0.0; }

TraceFn apply_heaviside_eps(const TraceFn& phi, double eps);
TraceFn apply_heaviside_eps_deriv(const TraceFn& phi, double eps);
TraceFn apply_heaviside(const TraceFn& phi);

/// Level-set iterate: phi and the flux it encodes, q = H_eps(phi).
struct LevelSetState {
  TraceFn phi;
  double eps = 0.0;
  TraceFn q;

  static LevelSetState from_phi(TraceFn phi, double eps);
};

/// Smoothed total-variation curvature
///   beta * d/dx [ g / sqrt(g^2 + eta^2) ],  g = d/dx H_eps(phi),
/// discretized with differences centered at half nodes and zero flux
/// through both ends.
TraceFn curvature_term(const TraceFn& phi, double eps, double eta, double beta);

/// Solves w - w'' = rhs on the trace's 1D part with w' = 0 at both ends
/// (ghost nodes eliminated, second order). Needs at least 5 nodes.
TraceFn solve_helmholtz_neumann(const TraceFn& rhs);

/// Applies the discrete operator (I - d2/dx2) with the same ghost-node
/// Neumann closure as solve_helmholtz_neumann.
TraceFn apply_helmholtz_neumann(const TraceFn& w);

/// Solves -psi'' = rhs with psi = 0 at both ends (values of rhs at the end
/// nodes are ignored).
TraceFn solve_poisson_dirichlet(const TraceFn& rhs);

/// Centered first derivative, one-sided second-order at the ends.
TraceFn centered_derivative(const TraceFn& f);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Initial shape for the level-set function: a union of intervals, or a
/// constant level when `constant` is set (intervals are then ignored).
struct ShapeSpec {
  std::vector<Interval> intervals;
  bool use_constant = false;
  double constant = 0.0;
};

/// Signed distance dist(x, complement of D) - dist(x, D) on Gamma2, clipped
/// to [-3 eps, 3 eps].
TraceFn init_phi(const Grid& grid, const ShapeSpec& shape, double eps);

/// Nodal characteristic function of the union of intervals on Gamma2.
TraceFn indicator_trace(const Grid& grid, const std::vector<Interval>& intervals);

/// Number of maximal runs of consecutive nodes with q > threshold.
int component_count(const TraceFn& q, double threshold = 0.5);

}  // namespace cauchyls
