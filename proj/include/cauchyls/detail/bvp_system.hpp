#pragma once

// Factorized finite-volume system for mixed BVPs on a fixed grid and fixed
// set of Dirichlet parts. Templated on the scalar so spectral diagnostics can
// run in extended precision; everything else instantiates it with double.

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "cauchyls/pde.hpp"

namespace cauchyls::detail {

struct BcKinds {
  BcKind gamma1 = BcKind::Dirichlet;
  BcKind gamma2 = BcKind::Neumann;
  BcKind gamma3 = BcKind::Neumann;

  BcKind of(BoundaryPart part) const {
    switch (part) {
      case BoundaryPart::Gamma1: return gamma1;
      case BoundaryPart::Gamma2: return gamma2;
      case BoundaryPart::Gamma3: return gamma3;
    }
    return BcKind::Neumann;
  }
};

/// Per-part boundary data. Interpreted as values on Dirichlet parts and as
/// outward conormal flux on Neumann parts; an empty span means zero.
template <typename Real>
struct PartValues {
  std::span<const Real> gamma1;
  std::span<const Real> gamma2;
  std::span<const Real> gamma3;
};

template <typename Real>
class BvpSystem {
 public:
  using Vector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
  using Sparse = Eigen::SparseMatrix<Real>;

  BvpSystem(const Grid& grid, const Coefficient& coefficient, BcKinds kinds)
      : grid_(grid), kinds_(kinds) {
    if (kinds.gamma1 == BcKind::Neumann && kinds.gamma2 == BcKind::Neumann &&
        kinds.gamma3 == BcKind::Neumann) {
      throw SolverError("all-Neumann boundary conditions give a singular system");
    }
    classify_nodes();
    assemble(coefficient);
    ldlt_.compute(matrix_);
    if (ldlt_.info() != Eigen::Success) {
      throw SolverError("sparse factorization of the BVP matrix failed");
    }
  }

  const Grid& grid() const { return grid_; }
  const BcKinds& kinds() const { return kinds_; }
  bool is_dirichlet(std::size_t node) const { return unknown_of_node_[node] < 0; }

  /// Full nodal solution for the given boundary data and optional nodal
  /// source f (empty span = zero).
  std::vector<Real> solve(const PartValues<Real>& data, std::span<const Real> source = {}) const {
    const std::size_t nodes = grid_.node_count();
    std::vector<Real> u(nodes, Real(0));
    set_dirichlet_values(data, u);

    Vector boundary(static_cast<Eigen::Index>(nodes));
    for (std::size_t n = 0; n < nodes; ++n) boundary[static_cast<Eigen::Index>(n)] = u[n];
    Vector load = coupling_ * boundary;

    const int nx = grid_.nx();
    const int ny = grid_.ny();
    for (std::size_t k = 0; k < node_of_unknown_.size(); ++k) {
      const std::size_t n = node_of_unknown_[k];
      const int i = static_cast<int>(n % static_cast<std::size_t>(nx + 1));
      const int j = static_cast<int>(n / static_cast<std::size_t>(nx + 1));
      Real b = load[static_cast<Eigen::Index>(k)];
      if (!source.empty()) b += source[n] * width_x(i) * width_y(j);
      if (j == 0 && kinds_.gamma1 == BcKind::Neumann && !data.gamma1.empty()) {
        b += data.gamma1[static_cast<std::size_t>(i)] * width_x(i);
      }
      if (j == ny && kinds_.gamma2 == BcKind::Neumann && !data.gamma2.empty()) {
        b += data.gamma2[static_cast<std::size_t>(i)] * width_x(i);
      }
      if ((i == 0 || i == nx) && kinds_.gamma3 == BcKind::Neumann && !data.gamma3.empty()) {
        b += side_value(data.gamma3, i == 0 ? 0 : 1, j) * width_y(j);
      }
      load[static_cast<Eigen::Index>(k)] = b;
    }

    const Vector x = ldlt_.solve(load);
    const Real load_norm = load.norm();
    if (load_norm > Real(0)) {
      const Real residual = (matrix_ * x - load).norm() / load_norm;
      if (!(residual <= Real(kSolverTolerance))) {
        throw SolverError("linear solve reached relative residual " +
                          std::to_string(static_cast<double>(residual)) + " > " +
                          std::to_string(kSolverTolerance));
      }
    }
    for (std::size_t k = 0; k < node_of_unknown_.size(); ++k) {
      u[node_of_unknown_[k]] = x[static_cast<Eigen::Index>(k)];
    }
    return u;
  }

 private:
  // Control-volume widths: half cells on the boundary.
  Real width_x(int i) const {
    const Real h = Real(grid_.width()) / Real(grid_.nx());
    return (i == 0 || i == grid_.nx()) ? h / 2 : h;
  }
  Real width_y(int j) const {
    const Real h = Real(grid_.height()) / Real(grid_.ny());
    return (j == 0 || j == grid_.ny()) ? h / 2 : h;
  }

  // Gamma3 value at side node j of the given side (0 = left, 1 = right);
  // corners are extrapolated linearly from the two nearest side nodes.
  Real side_value(std::span<const Real> g3, int side, int j) const {
    const int ny = grid_.ny();
    const std::size_t offset = static_cast<std::size_t>(side) * static_cast<std::size_t>(ny - 1);
    auto at = [&](int jj) { return g3[offset + static_cast<std::size_t>(jj - 1)]; };
    if (j == 0) return 2 * at(1) - at(2);
    if (j == ny) return 2 * at(ny - 1) - at(ny - 2);
    return at(j);
  }

  bool corner(int i, int j) const {
    return (i == 0 || i == grid_.nx()) && (j == 0 || j == grid_.ny());
  }

  void classify_nodes() {
    const int nx = grid_.nx();
    const int ny = grid_.ny();
    unknown_of_node_.assign(grid_.node_count(), 0);
    for (int j = 0; j <= ny; ++j) {
      for (int i = 0; i <= nx; ++i) {
        bool dirichlet = false;
        if (j == 0) dirichlet = kinds_.gamma1 == BcKind::Dirichlet;
        else if (j == ny) dirichlet = kinds_.gamma2 == BcKind::Dirichlet;
        else if (i == 0 || i == nx) dirichlet = kinds_.gamma3 == BcKind::Dirichlet;
        if (corner(i, j) && kinds_.gamma3 == BcKind::Dirichlet) dirichlet = true;
        unknown_of_node_[grid_.index(i, j)] = dirichlet ? -1 : 0;
      }
    }
    node_of_unknown_.clear();
    for (std::size_t n = 0; n < unknown_of_node_.size(); ++n) {
      if (unknown_of_node_[n] == 0) {
        unknown_of_node_[n] = static_cast<int>(node_of_unknown_.size());
        node_of_unknown_.push_back(n);
      }
    }
  }

  void assemble(const Coefficient& coefficient) {
    const int nx = grid_.nx();
    const int ny = grid_.ny();
    const double hx = grid_.hx();
    const double hy = grid_.hy();
    const Real rhx = Real(grid_.width()) / Real(nx);
    const Real rhy = Real(grid_.height()) / Real(ny);

    auto face = [&](double x, double y) {
      const double a = coefficient(x, y);
      if (!(a >= coefficient.alpha) || !std::isfinite(a)) {
        throw InvalidArgument("coefficient a(" + std::to_string(x) + ", " + std::to_string(y) +
                              ") = " + std::to_string(a) + " violates the ellipticity bound " +
                              std::to_string(coefficient.alpha));
      }
      return Real(a);
    };

    std::vector<Eigen::Triplet<Real>> inner;
    std::vector<Eigen::Triplet<Real>> coupling;
    inner.reserve(5 * node_of_unknown_.size());

    for (std::size_t k = 0; k < node_of_unknown_.size(); ++k) {
      const std::size_t n = node_of_unknown_[k];
      const int i = static_cast<int>(n % static_cast<std::size_t>(nx + 1));
      const int j = static_cast<int>(n / static_cast<std::size_t>(nx + 1));
      Real diagonal(0);
      auto link = [&](int ni, int nj, Real c) {
        diagonal += c;
        const std::size_t m = grid_.index(ni, nj);
        const int col = unknown_of_node_[m];
        if (col >= 0) {
          inner.emplace_back(static_cast<int>(k), col, -c);
        } else {
          coupling.emplace_back(static_cast<int>(k), static_cast<int>(m), c);
        }
      };
      if (i < nx) link(i + 1, j, face(grid_.x(i) + 0.5 * hx, grid_.y(j)) * width_y(j) / rhx);
      if (i > 0) link(i - 1, j, face(grid_.x(i) - 0.5 * hx, grid_.y(j)) * width_y(j) / rhx);
      if (j < ny) link(i, j + 1, face(grid_.x(i), grid_.y(j) + 0.5 * hy) * width_x(i) / rhy);
      if (j > 0) link(i, j - 1, face(grid_.x(i), grid_.y(j) - 0.5 * hy) * width_x(i) / rhy);
      inner.emplace_back(static_cast<int>(k), static_cast<int>(k), diagonal);
    }

    const auto unknowns = static_cast<Eigen::Index>(node_of_unknown_.size());
    matrix_.resize(unknowns, unknowns);
    matrix_.setFromTriplets(inner.begin(), inner.end());
    coupling_.resize(unknowns, static_cast<Eigen::Index>(grid_.node_count()));
    coupling_.setFromTriplets(coupling.begin(), coupling.end());
  }

  void set_dirichlet_values(const PartValues<Real>& data, std::vector<Real>& u) const {
    const int nx = grid_.nx();
    const int ny = grid_.ny();
    if (kinds_.gamma3 == BcKind::Dirichlet && !data.gamma3.empty()) {
      for (int side = 0; side < 2; ++side) {
        const int i = side == 0 ? 0 : nx;
        for (int j = 0; j <= ny; ++j) u[grid_.index(i, j)] = side_value(data.gamma3, side, j);
      }
    }
    if (kinds_.gamma1 == BcKind::Dirichlet) {
      for (int i = 0; i <= nx; ++i) {
        u[grid_.index(i, 0)] = data.gamma1.empty() ? Real(0) : data.gamma1[static_cast<std::size_t>(i)];
      }
    }
    if (kinds_.gamma2 == BcKind::Dirichlet) {
      for (int i = 0; i <= nx; ++i) {
        u[grid_.index(i, ny)] = data.gamma2.empty() ? Real(0) : data.gamma2[static_cast<std::size_t>(i)];
      }
    }
  }

  Grid grid_;
  BcKinds kinds_;
  std::vector<int> unknown_of_node_;
  std::vector<std::size_t> node_of_unknown_;
  Sparse matrix_;
  Sparse coupling_;
  Eigen::SimplicialLDLT<Sparse> ldlt_;
};

/// One-sided second-order outward conormal derivative on `part`.
template <typename Real>
std::vector<Real> conormal_trace(const Grid& grid, const Coefficient& a,
                                 std::span<const Real> u, BoundaryPart part) {
  const int nx = grid.nx();
  const int ny = grid.ny();
  const Real rhx = Real(grid.width()) / Real(nx);
  const Real rhy = Real(grid.height()) / Real(ny);
  auto at = [&](int i, int j) { return u[grid.index(i, j)]; };
  // Inward one-sided derivative from three samples starting at the boundary.
  auto inward = [](Real u0, Real u1, Real u2, Real h) { return (-3 * u0 + 4 * u1 - u2) / (2 * h); };

  std::vector<Real> out;
  out.reserve(grid.part_size(part));
  switch (part) {
    case BoundaryPart::Gamma1:
      for (int i = 0; i <= nx; ++i) {
        out.push_back(-Real(a(grid.x(i), 0.0)) * inward(at(i, 0), at(i, 1), at(i, 2), rhy));
      }
      break;
    case BoundaryPart::Gamma2:
      for (int i = 0; i <= nx; ++i) {
        out.push_back(-Real(a(grid.x(i), grid.height())) *
                      inward(at(i, ny), at(i, ny - 1), at(i, ny - 2), rhy));
      }
      break;
    case BoundaryPart::Gamma3:
      for (int j = 1; j < ny; ++j) {
        out.push_back(-Real(a(0.0, grid.y(j))) * inward(at(0, j), at(1, j), at(2, j), rhx));
      }
      for (int j = 1; j < ny; ++j) {
        out.push_back(-Real(a(grid.width(), grid.y(j))) *
                      inward(at(nx, j), at(nx - 1, j), at(nx - 2, j), rhx));
      }
      break;
  }
  return out;
}

}  // namespace cauchyls::detail
