#pragma once

#include <functional>
#include <optional>
#include <stdexcept>

#include "cauchyls/grid.hpp"

namespace cauchyls {

/// Raised when a linear solve fails or the system is singular.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Scalar diffusion coefficient a(x,y) of -div(a grad u), with a known
/// ellipticity bound `alpha`. Evaluated at face midpoints during assembly.
struct Coefficient {
  std::function<double(double, double)> a;
  double alpha = 1.0;

  static Coefficient constant(double value);
  double operator()(double x, double y) const { return a(x, y); }
};

enum class BcKind { Dirichlet, Neumann };

/// Boundary condition on one part. Neumann data is the outward conormal flux
/// a du/dnu. An empty `data` trace means homogeneous data.
struct BoundaryCondition {
  BcKind kind = BcKind::Neumann;
  TraceFn data;

  static BoundaryCondition dirichlet(TraceFn values) { return {BcKind::Dirichlet, std::move(values)}; }
  static BoundaryCondition neumann(TraceFn flux) { return {BcKind::Neumann, std::move(flux)}; }
};

/// Mixed BVP  -div(a grad u) = f  with one condition per boundary part.
///
/// When Gamma3 is Dirichlet, corners owned by a Neumann part become Dirichlet
/// nodes whose value is extrapolated linearly from the two nearest side nodes.
struct BvpSpec {
  Grid grid;
  Coefficient coefficient;
  std::optional<Field> source;
  BoundaryCondition gamma1;
  BoundaryCondition gamma2;
  BoundaryCondition gamma3;

  const BoundaryCondition& condition(BoundaryPart part) const;
};

/// Relative residual the linear solve must reach.
inline constexpr double kSolverTolerance = 1e-10;

/// Solves the mixed BVP with the 5-point scheme (face-midpoint coefficient,
/// half control volumes at Neumann boundaries, which is the symmetric form of
/// ghost-node elimination). Throws SolverError when no part is Dirichlet or
/// the solve misses kSolverTolerance.
Field solve_mixed_bvp(const BvpSpec& spec);

/// Outward conormal derivative a du/dnu on every node of `part`, using the
/// second-order one-sided formula (-3u0 + 4u1 - u2)/(2h) along the inward
/// normal.
TraceFn neumann_trace(const Field& u, const Coefficient& a, BoundaryPart part);

/// As above, but returns the imposed data verbatim where `spec` prescribes a
/// Neumann condition on `part`.
TraceFn neumann_trace(const Field& u, const BvpSpec& spec, BoundaryPart part);

}  // namespace cauchyls
