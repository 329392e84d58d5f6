#pragma once

#include <Eigen/Core>

#include <array>
#include <cmath>
#include <cstdint>

namespace ftlab {

/// Periodic torus discretization with an embedded open box domain D.
///
/// The ambient space is the torus [0,L)^d sampled at n points per axis
/// (spacing h = L/n).  D is the open box prod_j (offset_j, offset_j + ell)
/// of side ell; the smooth cutoff transitions to zero over a width w around
/// it.  The closed box expanded by w must stay strictly inside the cell so
/// that nothing supported there wraps around, and the box corners must sit
/// on grid nodes so the Dirichlet sine basis shares its quadrature nodes
/// with the ambient grid.
struct Grid {
  int dim = 1;
  int n = 256;
  double side = 2.0;
  std::array<double, 2> domain_offset{0.75, 0.75};
  double domain_side = 0.5;
  double cutoff_width = 0.25;

  Grid() = default;
  Grid(int dim_, int n_, double side_, std::array<double, 2> offset_, double domain_side_,
       double cutoff_width_);

  /// Centered box of side L/4 with transition width L/8 (grid-aligned for
  /// any n that is a multiple of 16).  Defaults match the solver studies.
  static Grid box_default(int dim_, int n_, double side_ = 2.0);

  double spacing() const { return side / n; }
  Eigen::Index size() const {
    Eigen::Index s = 1;
    for (int a = 0; a < dim; ++a) s *= n;
    return s;
  }

  /// Sine modes per axis inside D; interior nodes of D coincide with
  /// ambient nodes by construction.
  int sine_modes() const { return static_cast<int>(std::lround(n * domain_side / side)) - 1; }

  /// Lowest ambient node index of the box corner on each axis.
  int domain_first_node(int axis) const {
    return static_cast<int>(std::lround(domain_offset[static_cast<std::size_t>(axis)] / spacing()));
  }

  /// Coordinate of ambient node i along one axis.
  double coord(int i) const { return i * spacing(); }

  /// Signed integer frequency of storage slot m (FFT natural order).
  int freq_index(int m) const { return m < n / 2 ? m : m - n; }

  /// Angular frequency xi_k = 2 pi k / L of storage slot m.
  double freq(int m) const {
    return 2.0 * 3.14159265358979323846 * freq_index(m) / side;
  }

  /// Whether the node with per-axis indices idx lies in the closed box.
  bool node_in_domain(const std::array<int, 2>& idx) const;

  /// Distance from x to the closed box along one axis (0 inside the slab).
  double axis_distance(int axis, double x) const;

  bool operator==(const Grid& other) const = default;

  void validate() const;
};

}  // namespace ftlab
