#pragma once

#include <Eigen/Core>

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "ftlab/grid.hpp"

namespace ftlab {

using Complex = std::complex<double>;

/// Real grid function on the ambient torus, row-major over node indices.
struct RealField {
  Grid grid;
  Eigen::ArrayXd values;

  RealField() = default;
  explicit RealField(const Grid& g) : grid(g), values(Eigen::ArrayXd::Zero(g.size())) {}
  RealField(const Grid& g, Eigen::ArrayXd v) : grid(g), values(std::move(v)) {
    if (values.size() != grid.size())
      throw std::invalid_argument("RealField: value count does not match grid");
  }

  double& at(int i0, int i1 = 0) { return values[flat(i0, i1)]; }
  double at(int i0, int i1 = 0) const { return values[flat(i0, i1)]; }

  Eigen::Index flat(int i0, int i1 = 0) const {
    return grid.dim == 1 ? i0 : static_cast<Eigen::Index>(i0) * grid.n + i1;
  }
};

/// Ambient Fourier coefficients, complex, FFT natural order per axis.
/// Slot m corresponds to the plane wave exp(i xi_k . x) with
/// xi_k = 2 pi k / L and k = m for m < n/2, k = m - n otherwise.
struct SpectralCoeffs {
  Grid grid;
  Eigen::ArrayXcd coeffs;

  SpectralCoeffs() = default;
  explicit SpectralCoeffs(const Grid& g) : grid(g), coeffs(Eigen::ArrayXcd::Zero(g.size())) {}
  SpectralCoeffs(const Grid& g, Eigen::ArrayXcd c) : grid(g), coeffs(std::move(c)) {
    if (coeffs.size() != grid.size())
      throw std::invalid_argument("SpectralCoeffs: coefficient count does not match grid");
  }
};

/// d real fields on one grid, the components of a vector field.
struct VectorField {
  std::vector<RealField> components;

  VectorField() = default;
  explicit VectorField(const Grid& g) : components(static_cast<std::size_t>(g.dim), RealField(g)) {}

  const Grid& grid() const { return components.front().grid; }
  int dim() const { return static_cast<int>(components.size()); }
};

inline void require_same_grid(const Grid& a, const Grid& b, const char* where) {
  if (!(a == b)) throw std::invalid_argument(std::string(where) + ": grid mismatch");
}

}  // namespace ftlab
