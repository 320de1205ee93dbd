#include "cauchyls/grid.hpp"

#include <cmath>

namespace cauchyls {

std::string to_string(BoundaryPart part) {
  switch (part) {
    case BoundaryPart::Gamma1: return "Gamma1";
    case BoundaryPart::Gamma2: return "Gamma2";
    case BoundaryPart::Gamma3: return "Gamma3";
  }
  return "unknown";
}

Grid::Grid(double width, double height, int nx, int ny)
    : width_(width), height_(height), nx_(nx), ny_(ny) {
  if (!(width > 0.0) || !(height > 0.0) || !std::isfinite(width) || !std::isfinite(height)) {
    throw InvalidArgument("grid dimensions must be positive and finite");
  }
  if (nx < 4 || ny < 4) {
    throw InvalidArgument("grid needs at least 4 cells per direction, got nx=" +
                          std::to_string(nx) + ", ny=" + std::to_string(ny));
  }
}

std::size_t Grid::part_size(BoundaryPart part) const {
  switch (part) {
    case BoundaryPart::Gamma1:
    case BoundaryPart::Gamma2: return static_cast<std::size_t>(nx_ + 1);
    case BoundaryPart::Gamma3: return static_cast<std::size_t>(2 * (ny_ - 1));
  }
  return 0;
}

double Grid::part_spacing(BoundaryPart part) const {
  return part == BoundaryPart::Gamma3 ? hy() : hx();
}

Grid build_grid(double width, double height, int nx, int ny) {
  return Grid(width, height, nx, ny);
}

std::vector<std::size_t> boundary_nodes(const Grid& grid, BoundaryPart part) {
  std::vector<std::size_t> nodes;
  nodes.reserve(grid.part_size(part));
  switch (part) {
    case BoundaryPart::Gamma1:
      for (int i = 0; i <= grid.nx(); ++i) nodes.push_back(grid.index(i, 0));
      break;
    case BoundaryPart::Gamma2:
      for (int i = 0; i <= grid.nx(); ++i) nodes.push_back(grid.index(i, grid.ny()));
      break;
    case BoundaryPart::Gamma3:
      for (int j = 1; j < grid.ny(); ++j) nodes.push_back(grid.index(0, j));
      for (int j = 1; j < grid.ny(); ++j) nodes.push_back(grid.index(grid.nx(), j));
      break;
  }
  return nodes;
}

std::vector<double> trace_coordinates(const Grid& grid, BoundaryPart part) {
  std::vector<double> s;
  s.reserve(grid.part_size(part));
  if (part == BoundaryPart::Gamma3) {
    for (int side = 0; side < 2; ++side) {
      for (int j = 1; j < grid.ny(); ++j) s.push_back(grid.y(j));
    }
  } else {
    for (int i = 0; i <= grid.nx(); ++i) s.push_back(grid.x(i));
  }
  return s;
}

TraceFn zero_trace(const Grid& grid, BoundaryPart part) {
  return constant_trace(grid, part, 0.0);
}

TraceFn constant_trace(const Grid& grid, BoundaryPart part, double value) {
  return TraceFn{part, grid.part_spacing(part), std::vector<double>(grid.part_size(part), value)};
}

TraceFn sample_trace(const Grid& grid, BoundaryPart part,
                     const std::function<double(double)>& f) {
  TraceFn t{part, grid.part_spacing(part), trace_coordinates(grid, part)};
  for (auto& v : t.values) v = f(v);
  return t;
}

std::vector<double> trace_weights(const TraceFn& trace) {
  std::vector<double> w(trace.size(), trace.spacing);
  if (trace.part != BoundaryPart::Gamma3 && !w.empty()) {
    w.front() *= 0.5;
    w.back() *= 0.5;
  }
  return w;
}

void check_trace(const Grid& grid, const TraceFn& trace, BoundaryPart part) {
  if (trace.part != part) {
    throw InvalidArgument("trace lives on " + to_string(trace.part) + ", expected " +
                          to_string(part));
  }
  if (trace.size() != grid.part_size(part)) {
    throw InvalidArgument("trace on " + to_string(part) + " has " +
                          std::to_string(trace.size()) + " values, grid expects " +
                          std::to_string(grid.part_size(part)));
  }
}

namespace {

// Number of cells along the direction the part runs in.
int cells_along(const TraceFn& t) {
  if (t.part == BoundaryPart::Gamma3) return static_cast<int>(t.size() / 2) + 1;
  return static_cast<int>(t.size()) - 1;
}

int cells_along(const Grid& g, BoundaryPart part) {
  return part == BoundaryPart::Gamma3 ? g.ny() : g.nx();
}

}  // namespace

TraceFn restrict_trace(const TraceFn& fine, const Grid& coarse) {
  const int nf = cells_along(fine);
  const int nc = cells_along(coarse, fine.part);
  if (nf < nc || nf % nc != 0) {
    throw InvalidArgument("restrict_trace: fine grid with " + std::to_string(nf) +
                          " cells is not nested over " + std::to_string(nc) + " cells");
  }
  const std::size_t ratio = static_cast<std::size_t>(nf / nc);
  TraceFn out{fine.part, coarse.part_spacing(fine.part), {}};
  out.values.reserve(coarse.part_size(fine.part));
  if (fine.part == BoundaryPart::Gamma3) {
    // Side node j (1..nc-1) sits at fine index j*ratio; stored from offset 0.
    const std::size_t side_f = static_cast<std::size_t>(nf - 1);
    for (std::size_t side = 0; side < 2; ++side) {
      for (int j = 1; j < nc; ++j) {
        out.values.push_back(fine.values[side * side_f + static_cast<std::size_t>(j) * ratio - 1]);
      }
    }
  } else {
    for (int i = 0; i <= nc; ++i) out.values.push_back(fine.values[static_cast<std::size_t>(i) * ratio]);
  }
  return out;
}

TraceFn prolong_trace(const TraceFn& coarse, const Grid& fine) {
  if (coarse.part == BoundaryPart::Gamma3) {
    throw InvalidArgument("prolong_trace supports Gamma1/Gamma2 traces only");
  }
  const int nc = cells_along(coarse);
  const int nf = fine.nx();
  if (nf < nc || nf % nc != 0) {
    throw InvalidArgument("prolong_trace: grids are not nested");
  }
  const int ratio = nf / nc;
  TraceFn out{coarse.part, fine.hx(), std::vector<double>(static_cast<std::size_t>(nf + 1))};
  for (int i = 0; i <= nf; ++i) {
    const int k = std::min(i / ratio, nc - 1);
    const double s = static_cast<double>(i - k * ratio) / ratio;
    out.values[static_cast<std::size_t>(i)] =
        (1.0 - s) * coarse.values[static_cast<std::size_t>(k)] +
        s * coarse.values[static_cast<std::size_t>(k + 1)];
  }
  return out;
}

Field sample_field(const Grid& grid, const std::function<double(double, double)>& f) {
  Field u(grid);
  for (int j = 0; j <= grid.ny(); ++j) {
    for (int i = 0; i <= grid.nx(); ++i) u(i, j) = f(grid.x(i), grid.y(j));
  }
  return u;
}

}  // namespace cauchyls
