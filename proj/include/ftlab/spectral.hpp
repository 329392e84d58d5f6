#pragma once

#include <Eigen/Core>

#include <cmath>
#include <functional>
#include <utility>

#include "ftlab/field.hpp"

namespace ftlab {

/// Discrete Fourier transform, forward convention f_hat_k = n^{-d} sum_x f(x) exp(-i xi_k . x).
/// The DC coefficient equals the field mean.
SpectralCoeffs dft_forward(const RealField& f);

/// Inverse transform f(x) = sum_k c_k exp(i xi_k . x).  Input must be
/// Hermitian symmetric (relative defect above 1e-10 is rejected); the output
/// is the real part of the sum.
RealField dft_inverse(const SpectralCoeffs& c);

/// Relative Hermitian symmetry defect max_k |c(k) - conj(c(-k))| / max |c|.
double hermitian_defect(const SpectralCoeffs& c);

/// Coefficient-wise product with a symbol evaluated at each discrete
/// frequency.  The symbol receives xi as an Eigen::Vector2d zero-padded
/// beyond the grid dimension.  Non-finite symbol values are rejected.
SpectralCoeffs apply_multiplier(const SpectralCoeffs& c,
                                const std::function<Complex(const Eigen::Vector2d&)>& symbol);

/// Bessel potential J^s f = ((1 + |xi|^2)^{s/2} f_hat)^vee.
RealField bessel_potential(const RealField& f, double s);

/// Spectral gradient, one component per axis; the symbol i xi_j is set to
/// zero on the Nyquist slice of axis j (no consistent real representative).
VectorField gradient(const RealField& f);

/// Smooth cutoff psi: exactly 1 on the closed box, exactly 0 where any
/// per-axis distance to the box exceeds the cutoff width, C-infinity
/// profile in between.  Evaluated analytically per node, so refinement
/// leaves shared nodes untouched.
RealField build_cutoff(const Grid& g);

/// f zeroed outside the closed box, plus the relative L2 mass removed.
/// If the input L2 norm is below 1e-14 the absolute removed mass is
/// reported instead.
std::pair<RealField, double> restrict_to_domain(const RealField& f);

/// C-infinity step: 0 for x <= 0, 1 for x >= 1, strictly increasing between.
double smooth_step(double x);

/// Grid L2 norm with quadrature weight (L/n)^{d/2}.
double l2_norm(const RealField& f);

/// Relative quantity with the small-denominator rule: below 1e-14 the
/// numerator itself is reported.
double relative_or_absolute(double numerator, double denominator);

}  // namespace ftlab
