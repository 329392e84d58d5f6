#pragma once

#include "ftlab/dirichlet.hpp"
#include "ftlab/field.hpp"

namespace ftlab {

/// Outcome of the truncated-product limit fg = lim_j S^j f S^j g.
struct ProductReport {
  RealField value;
  int j_used = 0;
  double tail = 0.0;  // last successive-difference norm, relative to the product scale
  bool converged = false;
};

/// Low-pass truncation S^j f = (psi(|xi|/2^j) f_hat)^vee with the smooth
/// radial window equal to 1 on |xi| <= 2^j and 0 on |xi| >= (3/2) 2^j.
RealField smooth_truncate(const RealField& f, int j);

/// Level at which the truncation window covers every grid frequency.
int truncation_saturation_level(const Grid& g);

/// Product of two distributions as the limit of truncated products.
/// Iterates j = 2, 3, ... until the successive difference, measured in
/// H^{-beta_probe} relative to the running product norm, drops below tol or
/// the level cap is reached.  On a fixed grid the limit is exhausted one
/// step past the saturation level, where the difference vanishes exactly.
ProductReport paraproduct_product(const RealField& f, const RealField& g, double tol,
                                  double beta_probe);

/// ||fg||_{H_p^{-beta}} / (||f||_{H_p^{delta}} ||g||_{H_q^{-beta}})
/// for the paraproduct product.  Requires 0 < beta < delta and
/// q > max(p, d/delta); denominators below 1e-14 are rejected.
double product_estimate_ratio(const RealField& f, const RealField& g, double delta, double beta,
                              double p, double q);

/// The transport nonlinearity <grad u, grad Z> for u in the sine basis:
/// paraproduct per component, summed, restricted to the closed box, and
/// analyzed back into sine coefficients.
struct TransportProduct {
  SineCoeffs value;
  ProductReport report;   // value member unused; j_used/tail/converged summarize all axes
  double leakage = 0.0;
};
TransportProduct transport_product(const SineCoeffs& u, const RealField& Z, double tol,
                                   double beta_probe);

}  // namespace ftlab
