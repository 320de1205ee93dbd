#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cauchyls {

/// Raised when a precondition on shapes, sizes or parameters is violated.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Boundary parts of the rectangle: Gamma1 is the bottom edge (accessible,
/// Cauchy data), Gamma2 the top edge (unknown flux), Gamma3 the two sides.
///
/// Corner ownership: (0,0), (nx,0) belong to Gamma1; (0,ny), (nx,ny) to
/// Gamma2. Gamma3 holds only the interior side nodes, left side first.
enum class BoundaryPart { Gamma1, Gamma2, Gamma3 };

std::string to_string(BoundaryPart part);

/// Uniform node-centered grid on (0,width) x (0,height).
class Grid {
 public:
  Grid(double width, double height, int nx, int ny);

  double width() const { return width_; }
  double height() const { return height_; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  double hx() const { return width_ / nx_; }
  double hy() const { return height_ / ny_; }

  std::size_t node_count() const {
    return static_cast<std::size_t>(nx_ + 1) * static_cast<std::size_t>(ny_ + 1);
  }
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(nx_ + 1) +
           static_cast<std::size_t>(i);
  }
  double x(int i) const { return i * hx(); }
  double y(int j) const { return j * hy(); }

  std::size_t part_size(BoundaryPart part) const;
  /// Node spacing along the part (hx for Gamma1/Gamma2, hy for Gamma3).
  double part_spacing(BoundaryPart part) const;

  bool operator==(const Grid& other) const = default;

 private:
  double width_;
  double height_;
  int nx_;
  int ny_;
};

Grid build_grid(double width, double height, int nx, int ny);

/// Node indices of a boundary part, ordered by increasing arc parameter
/// (x for Gamma1/Gamma2; y on the left side, then y on the right side for
/// Gamma3).
std::vector<std::size_t> boundary_nodes(const Grid& grid, BoundaryPart part);

/// Scalar function sampled on the nodes of one boundary part.
struct TraceFn {
  BoundaryPart part = BoundaryPart::Gamma1;
  double spacing = 0.0;
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  double operator[](std::size_t k) const { return values[k]; }
  double& operator[](std::size_t k) { return values[k]; }
};

TraceFn zero_trace(const Grid& grid, BoundaryPart part);
TraceFn constant_trace(const Grid& grid, BoundaryPart part, double value);
/// Samples f at the arc parameter of every node of the part.
TraceFn sample_trace(const Grid& grid, BoundaryPart part,
                     const std::function<double(double)>& f);
/// Arc parameter of each node of the part.
std::vector<double> trace_coordinates(const Grid& grid, BoundaryPart part);

/// Quadrature weights along a trace: trapezoid rule (h/2 at the ends) for
/// Gamma1/Gamma2, plain h for the interior side nodes of Gamma3.
std::vector<double> trace_weights(const TraceFn& trace);

/// Throws unless the trace lives on `part` of `grid`.
void check_trace(const Grid& grid, const TraceFn& trace, BoundaryPart part);

/// Injection of a trace from a nested fine grid onto `coarse`.
TraceFn restrict_trace(const TraceFn& fine, const Grid& coarse);

/// Linear interpolation of a coarse trace onto a nested fine grid.
TraceFn prolong_trace(const TraceFn& coarse, const Grid& fine);

/// Scalar grid function on all nodes.
struct Field {
  Grid grid;
  std::vector<double> values;

  explicit Field(const Grid& g, double fill = 0.0)
      : grid(g), values(g.node_count(), fill) {}

  double operator()(int i, int j) const { return values[grid.index(i, j)]; }
  double& operator()(int i, int j) { return values[grid.index(i, j)]; }
};

Field sample_field(const Grid& grid, const std::function<double(double, double)>& f);

}  // namespace cauchyls
