#include "cauchyls/levelset.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cauchyls {

namespace {

void require_eps(double eps) {
  if (!(eps > 0.0)) throw InvalidArgument("smoothing width eps must be positive");
}

TraceFn map_values(const TraceFn& in, auto&& f) {
  TraceFn out = in;
  for (auto& v : out.values) v = f(v);
  return out;
}

// Thomas algorithm for a tridiagonal system; sub/sup are indexed by row.
std::vector<double> solve_tridiagonal(std::vector<double> sub, std::vector<double> diag,
                                      std::vector<double> sup, std::vector<double> rhs) {
  const std::size_t n = diag.size();
  for (std::size_t i = 1; i < n; ++i) {
    const double m = sub[i] / diag[i - 1];
    diag[i] -= m * sup[i - 1];
    rhs[i] -= m * rhs[i - 1];
  }
  std::vector<double> x(n);
  x[n - 1] = rhs[n - 1] / diag[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) x[i] = (rhs[i] - sup[i] * x[i + 1]) / diag[i];
  return x;
}

}  // namespace

double heaviside_eps(double t, double eps) {
  require_eps(eps);
  if (t < -eps) return 0.0;
  if (t >= 0.0) return 1.0;
  return 1.0 + t / eps;
}

double heaviside_eps_deriv(double t, double eps) {
  require_eps(eps);
  return (t >= -eps && t <= 0.0) ? 1.0 / eps : 0.0;
}

TraceFn apply_heaviside_eps(const TraceFn& phi, double eps) {
  require_eps(eps);
  return map_values(phi, [eps](double t) { return heaviside_eps(t, eps); });
}

TraceFn apply_heaviside_eps_deriv(const TraceFn& phi, double eps) {
  require_eps(eps);
  return map_values(phi, [eps](double t) { return heaviside_eps_deriv(t, eps); });
}

TraceFn apply_heaviside(const TraceFn& phi) {
  return map_values(phi, [](double t) { return heaviside(t); });
}

LevelSetState LevelSetState::from_phi(TraceFn phi, double eps) {
  LevelSetState s;
  s.q = apply_heaviside_eps(phi, eps);
  s.phi = std::move(phi);
  s.eps = eps;
  return s;
}

TraceFn curvature_term(const TraceFn& phi, double eps, double eta, double beta) {
  if (!(eta > 0.0)) throw InvalidArgument("gradient regularization eta must be positive");
  const TraceFn hq = apply_heaviside_eps(phi, eps);
  const std::size_t n = phi.size();
  const double h = phi.spacing;
  // Normalized gradient at half nodes k+1/2, k = 0..n-2.
  std::vector<double> flux(n - 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double g = (hq[k + 1] - hq[k]) / h;
    flux[k] = g / std::sqrt(g * g + eta * eta);
  }
  TraceFn out = phi;
  for (std::size_t i = 0; i < n; ++i) {
    const double right = i + 1 < n ? flux[i] : 0.0;
    const double left = i > 0 ? flux[i - 1] : 0.0;
    // End nodes own half a cell.
    const double width = (i == 0 || i + 1 == n) ? 0.5 * h : h;
    out[i] = beta * (right - left) / width;
  }
  return out;
}

TraceFn solve_helmholtz_neumann(const TraceFn& rhs) {
  const std::size_t n = rhs.size();
  if (n < 5) throw InvalidArgument("Helmholtz solve needs at least 5 nodes");
  const double c = 1.0 / (rhs.spacing * rhs.spacing);
  std::vector<double> sub(n, -c), diag(n, 1.0 + 2.0 * c), sup(n, -c);
  // Ghost nodes w_{-1} = w_1 and w_{n} = w_{n-2}.
  sup[0] = -2.0 * c;
  sub[n - 1] = -2.0 * c;
  TraceFn out = rhs;
  out.values = solve_tridiagonal(std::move(sub), std::move(diag), std::move(sup), rhs.values);
  return out;
}

TraceFn apply_helmholtz_neumann(const TraceFn& w) {
  const std::size_t n = w.size();
  if (n < 5) throw InvalidArgument("Helmholtz operator needs at least 5 nodes");
  const double c = 1.0 / (w.spacing * w.spacing);
  TraceFn out = w;
  for (std::size_t i = 0; i < n; ++i) {
    const double left = i == 0 ? w[1] : w[i - 1];
    const double right = i + 1 == n ? w[n - 2] : w[i + 1];
    out[i] = w[i] - c * (left - 2.0 * w[i] + right);
  }
  return out;
}

TraceFn solve_poisson_dirichlet(const TraceFn& rhs) {
  const std::size_t n = rhs.size();
  if (n < 3) throw InvalidArgument("Poisson solve needs at least 3 nodes");
  const std::size_t m = n - 2;
  const double c = 1.0 / (rhs.spacing * rhs.spacing);
  std::vector<double> sub(m, -c), diag(m, 2.0 * c), sup(m, -c);
  std::vector<double> b(rhs.values.begin() + 1, rhs.values.end() - 1);
  const auto inner = solve_tridiagonal(std::move(sub), std::move(diag), std::move(sup), std::move(b));
  TraceFn out = rhs;
  out.values.assign(n, 0.0);
  std::copy(inner.begin(), inner.end(), out.values.begin() + 1);
  return out;
}

TraceFn centered_derivative(const TraceFn& f) {
  const std::size_t n = f.size();
  if (n < 3) throw InvalidArgument("derivative needs at least 3 nodes");
  const double h = f.spacing;
  TraceFn out = f;
  out[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
  for (std::size_t i = 1; i + 1 < n; ++i) out[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
  out[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
  return out;
}

namespace {

std::vector<Interval> merged(const std::vector<Interval>& intervals) {
  std::vector<Interval> sorted;
  for (const auto& iv : intervals) {
    if (!(iv.hi >= iv.lo)) throw InvalidArgument("interval with hi < lo");
    sorted.push_back(iv);
  }
  std::sort(sorted.begin(), sorted.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  std::vector<Interval> out;
  for (const auto& iv : sorted) {
    if (!out.empty() && iv.lo <= out.back().hi) {
      out.back().hi = std::max(out.back().hi, iv.hi);
    } else {
      out.push_back(iv);
    }
  }
  return out;
}

}  // namespace

TraceFn init_phi(const Grid& grid, const ShapeSpec& shape, double eps) {
  require_eps(eps);
  const double cap = 3.0 * eps;
  if (shape.use_constant) {
    return constant_trace(grid, BoundaryPart::Gamma2, std::clamp(shape.constant, -cap, cap));
  }
  const auto d = merged(shape.intervals);
  const double width = grid.width();
  return sample_trace(grid, BoundaryPart::Gamma2, [&](double x) {
    double inside = 0.0;  // dist(x, complement of D)
    double outside = std::numeric_limits<double>::infinity();  // dist(x, D)
    for (const auto& iv : d) {
      if (x >= iv.lo && x <= iv.hi) {
        outside = 0.0;
        // Interval ends that coincide with the ends of Gamma2 are not
        // boundaries of D inside Gamma2.
        const double left = iv.lo <= 0.0 ? std::numeric_limits<double>::infinity() : x - iv.lo;
        const double right = iv.hi >= width ? std::numeric_limits<double>::infinity() : iv.hi - x;
        inside = std::min(left, right);
      } else {
        outside = std::min(outside, x < iv.lo ? iv.lo - x : x - iv.hi);
      }
    }
    if (!std::isfinite(inside)) inside = cap;
    if (!std::isfinite(outside)) outside = cap;
    return std::clamp(inside - outside, -cap, cap);
  });
}

TraceFn indicator_trace(const Grid& grid, const std::vector<Interval>& intervals) {
  return sample_trace(grid, BoundaryPart::Gamma2, [&](double x) {
    for (const auto& iv : intervals) {
      if (x >= iv.lo && x <= iv.hi) return 1.0;
    }
    return 0.0;
  });
}

int component_count(const TraceFn& q, double threshold) {
  int count = 0;
  bool inside = false;
  for (double v : q.values) {
    const bool above = v > threshold;
    if (above && !inside) ++count;
    inside = above;
  }
  return count;
}

}  // namespace cauchyls
