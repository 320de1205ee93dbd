#pragma once

#include <Eigen/Dense>

#include <memory>
#include <optional>
#include <vector>

#include "cauchyls/grid.hpp"
#include "cauchyls/pde.hpp"

namespace cauchyls {

namespace detail {
template <typename Real>
class BvpSystem;
}

/// Grid, coefficient and source of the Cauchy problem, plus the factorized
/// system shared by L, its adjoint and the offset z (all three use Dirichlet
/// on Gamma1 and Neumann on Gamma2/Gamma3). Immutable; copies share the
/// factorization.
class OperatorContext {
 public:
  OperatorContext(const Grid& grid, Coefficient coefficient, std::optional<Field> source = {});

  const Grid& grid() const { return grid_; }
  const Coefficient& coefficient() const { return coefficient_; }
  const std::optional<Field>& source() const { return source_; }
  const detail::BvpSystem<double>& system() const { return *system_; }

 private:
  Grid grid_;
  Coefficient coefficient_;
  std::optional<Field> source_;
  std::shared_ptr<const detail::BvpSystem<double>> system_;
};

/// Data of the reduced equation  L q = g2 - z.  `delta` is the noise level
/// of g2 (zero for exact data).
struct CauchyData {
  TraceFn g1;
  TraceFn g2;
  TraceFn z;
  TraceFn rhs;
  double delta = 0.0;
};

/// Solves  P v = f, v = g1 on Gamma1, zero flux on Gamma2 and Gamma3, and
/// returns the conormal trace of v on Gamma1.
TraceFn compute_offset_z(const OperatorContext& ctx, const TraceFn& g1);

/// Builds CauchyData from (g1, g2), computing z and rhs = g2 - z.
CauchyData make_cauchy_data(const OperatorContext& ctx, TraceFn g1, TraceFn g2, double delta = 0.0);

/// L q: conormal trace on Gamma1 of the homogeneous problem with v = 0 on
/// Gamma1, flux q on Gamma2 and zero flux on Gamma3.
TraceFn apply_L(const OperatorContext& ctx, const TraceFn& q);

/// L* r = -v on Gamma2, where v solves the homogeneous problem with v = r on
/// Gamma1 and zero flux on Gamma2 and Gamma3.
TraceFn apply_L_adjoint(const OperatorContext& ctx, const TraceFn& r);

/// Residual L q - rhs of the reduced equation.
TraceFn residual_trace(const OperatorContext& ctx, const CauchyData& data, const TraceFn& q);

/// Largest nx accepted by the dense assembly.
inline constexpr int kMaxDenseNx = 256;

/// Dense matrix of L acting on nodal Gamma2 values (columns are L e_j).
Eigen::MatrixXd assemble_L_matrix(const OperatorContext& ctx);

/// Singular values sorted in decreasing order.
std::vector<double> singular_values(const Eigen::MatrixXd& m);

/// Singular values of L as an operator L2(Gamma2) -> L2(Gamma1), i.e. of
/// W1^{1/2} M W2^{-1/2} with trapezoid weights. Assembled and decomposed in
/// 113-bit floating point, since for tall domains most of the spectrum sits
/// below double round-off.
std::vector<double> operator_singular_values(const OperatorContext& ctx);

/// Least-squares line through (k, log sigma_k) for 1-based k in [first, last].
struct DecayFit {
  double slope = 0.0;
  double intercept = 0.0;
};
DecayFit fit_log_decay(const std::vector<double>& sigma, int first, int last);

/// Trapezoid inner product of two traces on the same part.
double trace_dot(const TraceFn& a, const TraceFn& b);

}  // namespace cauchyls
