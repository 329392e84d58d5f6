#include "ftlab/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ftlab {

namespace {

bool grid_aligned(double x, double h) {
  const double cells = x / h;
  return std::abs(cells - std::lround(cells)) < 1e-9;
}

}  // namespace

Grid::Grid(int dim_, int n_, double side_, std::array<double, 2> offset_, double domain_side_,
           double cutoff_width_)
    : dim(dim_),
      n(n_),
      side(side_),
      domain_offset(offset_),
      domain_side(domain_side_),
      cutoff_width(cutoff_width_) {
  validate();
}

Grid Grid::box_default(int dim_, int n_, double side_) {
  const double ell = side_ / 4.0;
  const double a = (side_ - ell) / 2.0;
  return Grid(dim_, n_, side_, {a, a}, ell, side_ / 8.0);
}

bool Grid::node_in_domain(const std::array<int, 2>& idx) const {
  const double h = spacing();
  for (int a = 0; a < dim; ++a) {
    const double x = idx[static_cast<std::size_t>(a)] * h;
    const double lo = domain_offset[static_cast<std::size_t>(a)];
    const double tol = 1e-9 * h;
    if (x < lo - tol || x > lo + domain_side + tol) return false;
  }
  return true;
}

double Grid::axis_distance(int axis, double x) const {
  const double lo = domain_offset[static_cast<std::size_t>(axis)];
  const double hi = lo + domain_side;
  if (x < lo) return lo - x;
  if (x > hi) return x - hi;
  return 0.0;
}

void Grid::validate() const {
  auto fail = [](const std::string& what) { throw std::invalid_argument("Grid: " + what); };

  if (dim != 1 && dim != 2) fail("dimension must be 1 or 2");
  if (n < 16) fail("n must be at least 16");
  if ((n & (n - 1)) != 0) fail("n must be a power of two");
  if (!(side > 0.0)) fail("torus side must be positive");
  if (!(domain_side > 0.0)) fail("domain side must be positive");
  if (!(cutoff_width > 0.0)) fail("cutoff width must be positive");
  if (cutoff_width > (side - domain_side) / 2.0)
    fail("cutoff width must not exceed (L - ell)/2");

  const double h = spacing();
  for (int a = 0; a < dim; ++a) {
    const double lo = domain_offset[static_cast<std::size_t>(a)];
    if (!(lo - cutoff_width > 0.0) || !(lo + domain_side + cutoff_width < side))
      fail("closed domain plus cutoff margin must lie strictly inside the cell");
    if (!grid_aligned(lo, h)) fail("domain corner must sit on a grid node");
  }
  if (!grid_aligned(domain_side, h)) fail("domain side must span a whole number of cells");
  if (sine_modes() < 1) fail("domain must contain at least one interior node per axis");
}

}  // namespace ftlab
