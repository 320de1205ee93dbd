#include "cauchyls/data_norms.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "cauchyls/pde.hpp"

namespace cauchyls {

CauchyData synthesize_cauchy_data(const TraceFn& true_q_fine, const TraceFn& g1_fine,
                                  const OperatorContext& fine, const OperatorContext& inversion) {
  const Grid& gf = fine.grid();
  const Grid& gc = inversion.grid();
  const bool same_box = std::abs(gf.width() - gc.width()) <= 1e-12 * gc.width() &&
                        std::abs(gf.height() - gc.height()) <= 1e-12 * gc.height();
  if (!same_box || gf.nx() % gc.nx() != 0 || gf.ny() % gc.ny() != 0 ||
      gf.nx() / gc.nx() != gf.ny() / gc.ny()) {
    throw InvalidArgument("synthesize_cauchy_data: data grid does not nest the inversion grid");
  }
  check_trace(gf, true_q_fine, BoundaryPart::Gamma2);
  check_trace(gf, g1_fine, BoundaryPart::Gamma1);

  BvpSpec spec{gf,
               fine.coefficient(),
               fine.source(),
               BoundaryCondition::dirichlet(g1_fine),
               BoundaryCondition::neumann(true_q_fine),
               BoundaryCondition::neumann(zero_trace(gf, BoundaryPart::Gamma3))};
  const Field u = solve_mixed_bvp(spec);
  const TraceFn g2_fine = neumann_trace(u, fine.coefficient(), BoundaryPart::Gamma1);
  return make_cauchy_data(inversion, restrict_trace(g1_fine, gc), restrict_trace(g2_fine, gc));
}

NoisyTrace add_noise(const TraceFn& g2, double level, std::uint64_t seed) {
  if (!(level >= 0.0)) throw InvalidArgument("noise level must be nonnegative");
  const double norm = l2_norm_trace(g2);
  if (level == 0.0 || norm == 0.0) return {g2, 0.0};

  std::mt19937_64 engine(seed);
  TraceFn noise = g2;
  for (auto& v : noise.values) {
    // 53 random mantissa bits mapped to [-1, 1); independent of the
    // standard library's distribution implementation.
    const double u = static_cast<double>(engine() >> 11) * 0x1.0p-53;
    v = 2.0 * u - 1.0;
  }
  const double delta = level * norm;
  const double scale = delta / l2_norm_trace(noise);
  NoisyTrace out{g2, delta};
  for (std::size_t k = 0; k < out.values.size(); ++k) out.values[k] += scale * noise[k];
  return out;
}

double l2_norm_trace(const TraceFn& t) {
  const auto w = trace_weights(t);
  double sum = 0.0;
  for (std::size_t k = 0; k < t.size(); ++k) sum += w[k] * t[k] * t[k];
  return std::sqrt(sum);
}

double sobolev_dual_norm(const TraceFn& t, double s) {
  if (!(s > 0.0)) throw InvalidArgument("sobolev_dual_norm: order s must be positive");
  const std::size_t n = t.size();
  if (n < 3) return 0.0;
  const double h = t.spacing;
  const double length = h * static_cast<double>(n - 1);
  const double norm_factor = std::sqrt(2.0 / length);
  double total = 0.0;
  for (std::size_t k = 1; k + 1 < n; ++k) {
    const double freq = static_cast<double>(k) * std::numbers::pi / length;
    double coeff = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      coeff += h * t[i] * norm_factor * std::sin(freq * h * static_cast<double>(i));
    }
    total += std::pow(1.0 + freq * freq, -s) * coeff * coeff;
  }
  return std::sqrt(total);
}

}  // namespace cauchyls
