#pragma once

#include <cstdint>

#include "ftlab/field.hpp"
#include "ftlab/solver.hpp"

namespace ftlab::oracle {

/// O(n^2) direct-summation DFT, the independent route for transform checks.
SpectralCoeffs dft_direct(const RealField& f);

/// Deterministic pseudo-random field with O(1) values, for round-trip and
/// norm-identity checks (not regularity-calibrated).
RealField random_field(const Grid& g, std::uint64_t seed);

/// Plain-norm evaluation of the weighted Holder norm by an independent
/// double loop over node pairs (no eigen_norm reuse in the reduction order).
double weighted_holder_norm_direct(const TimePath& p, double rho, double gamma, double s,
                                   double sigma2);

/// Exponential-integrator (ETD2RK) time stepper for
/// du/dt = -sigma2 A u + <grad u, grad Z> with the classical grid product,
/// refined `refine`x in time relative to cfg.  Valid for band-limited Z.
TimePath classical_reference_solution(const SineCoeffs& u0, const RealField& Z,
                                      const SolverConfig& cfg, int refine);

}  // namespace ftlab::oracle
