// Extended-precision assembly and SVD of L. Kept in its own translation unit
// so the float128 instantiations do not slow down the rest of the build.

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/float128.hpp>

#include <Eigen/SVD>

#include <algorithm>

#include "cauchyls/detail/bvp_system.hpp"
#include "cauchyls/operator.hpp"

namespace cauchyls {

using Quad = boost::multiprecision::float128;

std::vector<double> operator_singular_values(const OperatorContext& ctx) {
  const auto& grid = ctx.grid();
  if (grid.nx() > kMaxDenseNx) {
    throw InvalidArgument("spectrum limited to nx <= " + std::to_string(kMaxDenseNx) +
                          ", got " + std::to_string(grid.nx()));
  }
  const detail::BvpSystem<Quad> system(grid, ctx.coefficient(), detail::BcKinds{});
  const std::size_t n = static_cast<std::size_t>(grid.nx() + 1);
  const Quad h = Quad(grid.width()) / Quad(grid.nx());
  std::vector<Quad> sqrt_w(n, sqrt(h));
  sqrt_w.front() = sqrt(h / 2);
  sqrt_w.back() = sqrt(h / 2);

  using Matrix = Eigen::Matrix<Quad, Eigen::Dynamic, Eigen::Dynamic>;
  Matrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  std::vector<Quad> e(n, Quad(0));
  for (std::size_t j = 0; j < n; ++j) {
    e[j] = Quad(1);
    const auto v = system.solve({{}, e, {}});
    const auto col = detail::conormal_trace<Quad>(grid, ctx.coefficient(), v, BoundaryPart::Gamma1);
    for (std::size_t i = 0; i < n; ++i) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = sqrt_w[i] * col[i] / sqrt_w[j];
    }
    e[j] = Quad(0);
  }
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& s = svd.singularValues();
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(s.size()));
  for (Eigen::Index k = 0; k < s.size(); ++k) out.push_back(static_cast<double>(s[k]));
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

}  // namespace cauchyls
