#include "cauchyls/operator.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

#include "cauchyls/detail/bvp_system.hpp"

namespace cauchyls {

OperatorContext::OperatorContext(const Grid& grid, Coefficient coefficient,
                                 std::optional<Field> source)
    : grid_(grid), coefficient_(std::move(coefficient)), source_(std::move(source)) {
  if (source_ && !(source_->grid == grid_)) {
    throw InvalidArgument("operator context: source field lives on a different grid");
  }
  system_ = std::make_shared<const detail::BvpSystem<double>>(grid_, coefficient_, detail::BcKinds{});
}

TraceFn compute_offset_z(const OperatorContext& ctx, const TraceFn& g1) {
  check_trace(ctx.grid(), g1, BoundaryPart::Gamma1);
  std::span<const double> source;
  if (ctx.source()) source = ctx.source()->values;
  const auto v = ctx.system().solve({g1.values, {}, {}}, source);
  return TraceFn{BoundaryPart::Gamma1, ctx.grid().hx(),
                 detail::conormal_trace<double>(ctx.grid(), ctx.coefficient(), v, BoundaryPart::Gamma1)};
}

CauchyData make_cauchy_data(const OperatorContext& ctx, TraceFn g1, TraceFn g2, double delta) {
  check_trace(ctx.grid(), g2, BoundaryPart::Gamma1);
  if (!(delta >= 0.0)) throw InvalidArgument("noise level delta must be nonnegative");
  CauchyData data;
  data.z = compute_offset_z(ctx, g1);
  data.rhs = g2;
  for (std::size_t k = 0; k < data.rhs.size(); ++k) data.rhs[k] -= data.z[k];
  data.g1 = std::move(g1);
  data.g2 = std::move(g2);
  data.delta = delta;
  return data;
}

TraceFn apply_L(const OperatorContext& ctx, const TraceFn& q) {
  check_trace(ctx.grid(), q, BoundaryPart::Gamma2);
  const auto v = ctx.system().solve({{}, q.values, {}});
  return TraceFn{BoundaryPart::Gamma1, ctx.grid().hx(),
                 detail::conormal_trace<double>(ctx.grid(), ctx.coefficient(), v, BoundaryPart::Gamma1)};
}

TraceFn apply_L_adjoint(const OperatorContext& ctx, const TraceFn& r) {
  check_trace(ctx.grid(), r, BoundaryPart::Gamma1);
  const auto v = ctx.system().solve({r.values, {}, {}});
  const auto& grid = ctx.grid();
  TraceFn out{BoundaryPart::Gamma2, grid.hx(), std::vector<double>(grid.part_size(BoundaryPart::Gamma2))};
  for (int i = 0; i <= grid.nx(); ++i) out[static_cast<std::size_t>(i)] = -v[grid.index(i, grid.ny())];
  return out;
}

TraceFn residual_trace(const OperatorContext& ctx, const CauchyData& data, const TraceFn& q) {
  TraceFn r = apply_L(ctx, q);
  if (data.rhs.size() != r.size()) throw InvalidArgument("residual: data/grid size mismatch");
  for (std::size_t k = 0; k < r.size(); ++k) r[k] -= data.rhs[k];
  return r;
}

Eigen::MatrixXd assemble_L_matrix(const OperatorContext& ctx) {
  const auto& grid = ctx.grid();
  if (grid.nx() > kMaxDenseNx) {
    throw InvalidArgument("dense L assembly limited to nx <= " + std::to_string(kMaxDenseNx) +
                          ", got " + std::to_string(grid.nx()));
  }
  const auto n = static_cast<Eigen::Index>(grid.nx() + 1);
  Eigen::MatrixXd m(n, n);
  TraceFn e = zero_trace(grid, BoundaryPart::Gamma2);
  for (Eigen::Index j = 0; j < n; ++j) {
    e[static_cast<std::size_t>(j)] = 1.0;
    const TraceFn col = apply_L(ctx, e);
    for (Eigen::Index i = 0; i < n; ++i) m(i, j) = col[static_cast<std::size_t>(i)];
    e[static_cast<std::size_t>(j)] = 0.0;
  }
  return m;
}

std::vector<double> singular_values(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return {};
  if (!m.allFinite()) throw InvalidArgument("singular_values: matrix has non-finite entries");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  std::vector<double> out(s.data(), s.data() + s.size());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

DecayFit fit_log_decay(const std::vector<double>& sigma, int first, int last) {
  if (first < 1 || last <= first || static_cast<std::size_t>(last) > sigma.size()) {
    throw InvalidArgument("fit_log_decay: index range out of bounds");
  }
  double sk = 0, sy = 0, skk = 0, sky = 0;
  const double n = last - first + 1;
  for (int k = first; k <= last; ++k) {
    const double s = sigma[static_cast<std::size_t>(k - 1)];
    if (!(s > 0.0)) throw InvalidArgument("fit_log_decay: nonpositive singular value");
    const double y = std::log(s);
    sk += k;
    sy += y;
    skk += static_cast<double>(k) * k;
    sky += k * y;
  }
  DecayFit fit;
  fit.slope = (n * sky - sk * sy) / (n * skk - sk * sk);
  fit.intercept = (sy - fit.slope * sk) / n;
  return fit;
}

double trace_dot(const TraceFn& a, const TraceFn& b) {
  if (a.part != b.part || a.size() != b.size()) throw InvalidArgument("trace_dot: shape mismatch");
  const auto w = trace_weights(a);
  double sum = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) sum += w[k] * a[k] * b[k];
  return sum;
}

}  // namespace cauchyls
