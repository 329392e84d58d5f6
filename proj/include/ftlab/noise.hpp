#pragma once

#include <cstdint>
#include <string>

#include "ftlab/field.hpp"

namespace ftlab {

enum class NoiseKind { Fbm1dExact, LevySpectral, SmoothTest };

/// Pathwise noise request: Hurst parameter, realization seed, synthesis kind.
struct NoiseSpec {
  double hurst = 0.9;
  std::uint64_t seed = 1;
  NoiseKind kind = NoiseKind::Fbm1dExact;
  int band = 8;  // mode cap for the smooth_test kind; 0 gives the zero field

  void validate() const;
};

NoiseKind noise_kind_from_string(const std::string& s);
std::string to_string(NoiseKind k);

/// Exact-in-law 1-d fractional Brownian motion on the grid nodes, pinned to
/// B(0) = 0 at the origin node: circulant embedding of the increment
/// covariance followed by cumulative summation.  Deterministic in the seed.
RealField synthesize_fbm_1d(const NoiseSpec& spec, const Grid& g);

/// Approximate isotropic fractional Brownian field: Gaussian spectrum with
/// density proportional to |xi|^{-(2H+d)}, pinned to 0 at the origin node,
/// amplitude calibrated so Var[B(x_ref)] = |x_ref|^{2H} at |x_ref| = 0.25.
/// The calibration constant comes from the exact lattice spectral sum and is
/// cached per (H, grid).
RealField synthesize_levy_fbm(const NoiseSpec& spec, const Grid& g);

/// Band-limited deterministic test field: superposition of modes up to the
/// requested band with seeded signs, the drift a classical solver can verify.
RealField synthesize_smooth_test(const NoiseSpec& spec, const Grid& g);

/// Dispatch on spec.kind.
RealField synthesize_noise(const NoiseSpec& spec, const Grid& g);

/// Z = psi . B, the compactly supported noise the solver consumes.
RealField make_noise_Z(const RealField& B, const RealField& psi);

/// Resolution-stability report for ||Z||_{H_q^{1-beta}}: the norm at the
/// working grid against the norm of the field subsampled to n/2 nodes.
/// Relative drift below 15% classifies the field as regular at that order.
struct RegularityReport {
  double norm_fine = 0.0;
  double norm_coarse = 0.0;
  double drift = 0.0;
  bool regular = false;
};
RegularityReport sobolev_regularity_report(const RealField& Z, double one_minus_beta, double q);

}  // namespace ftlab
