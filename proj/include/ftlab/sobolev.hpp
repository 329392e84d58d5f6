#pragma once

#include <cstdint>
#include <utility>

#include "ftlab/field.hpp"

namespace ftlab {

/// Index (s, p) of the Bessel potential space H^s_p.
struct SobolevIndex {
  double s = 0.0;
  double p = 2.0;
};

/// Ambient fractional Sobolev norm: L_p grid norm of J^s f with quadrature
/// weight (L/n)^{d/p}.  Requires p >= 2.
double norm_Hsp(const RealField& f, const SobolevIndex& idx);

/// p = 2 norm evaluated in coefficient space, L^{d/2} (sum (1+|xi|^2)^s |c|^2)^{1/2}.
/// Agrees with norm_Hsp at p = 2 by Parseval; kept as an independent route.
double norm_Hs_coeff(const RealField& f, double s);

/// Support-constrained norm: the ambient norm together with the relative L2
/// mass outside the closed box.  The defect is reported, never fatal.
/// Requires idx.s > -1/2, the range where the space is defined.
std::pair<double, double> tilde_norm(const RealField& f, const SobolevIndex& idx);

/// Besov increment norm ||f||_{L_p} + (sum_{0<|y|<=1} ||f(.+y)-f||^2_{L_p}
/// / |y|^{d+2a'} h^d)^{1/2} over periodic lattice shifts.  0 < alpha_prime < 1.
double besov_increment_norm(const RealField& f, double alpha_prime, double p);

/// Gaussian field whose coefficient standard deviation is
/// (1+|xi_k|^2)^{-(s+d/2+eps)/2} with eps = 0.05: H^t norm finite for t <= s,
/// divergent under refinement for t > s + eps.  Draws are a pure function of
/// (seed, signed frequency), so refining the grid keeps shared modes
/// identical; Nyquist slices are zeroed.
RealField random_field_with_regularity(const Grid& g, double s, std::uint64_t seed);

/// Empirical Holder exponent: least-squares slope of log sup-increment
/// against log lag over dyadic lags in [2L/n, L/8], clamped to [0,1].
struct HolderEstimate {
  double exponent = 1.0;
  bool degenerate = false;
};
HolderEstimate holder_exponent_estimate(const RealField& f);

/// L_p grid norm with weight (L/n)^{d/p}.
double lp_norm(const RealField& f, double p);

}  // namespace ftlab
