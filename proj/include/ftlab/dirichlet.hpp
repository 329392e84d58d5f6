#pragma once

#include <Eigen/Core>

#include "ftlab/field.hpp"

namespace ftlab {

/// Coefficients in the Dirichlet sine eigenbasis of the box D.
/// Basis e_k(x) = prod_i sqrt(2/ell) sin(k_i pi (x_i - a_i)/ell) for
/// k in {1..M}^d, eigenvalue lambda_k = (pi/ell)^2 |k|^2 of -Laplacian.
/// Coefficients are stored row-major over (k_0, k_1), zero-based slots
/// for k_i = slot + 1.
struct SineCoeffs {
  Grid grid;
  Eigen::ArrayXd coeffs;

  SineCoeffs() = default;
  explicit SineCoeffs(const Grid& g)
      : grid(g), coeffs(Eigen::ArrayXd::Zero(size_for(g))) {}
  SineCoeffs(const Grid& g, Eigen::ArrayXd c) : grid(g), coeffs(std::move(c)) {
    if (coeffs.size() != size_for(g))
      throw std::invalid_argument("SineCoeffs: coefficient count does not match grid");
  }

  static Eigen::Index size_for(const Grid& g) {
    Eigen::Index m = g.sine_modes();
    return g.dim == 1 ? m : m * m;
  }

  /// l2 norm of the coefficients = L2(D) norm of the represented field.
  double l2() const { return std::sqrt(coeffs.square().sum()); }
};

/// Order parameter of the eigenbasis norm (sum (1+s2 lambda_k)^s c_k^2)^{1/2}.
struct EigenIndex {
  double s = 0.0;
};

/// Eigenvalues lambda_k of -Laplacian on D, in coefficient storage order.
const Eigen::ArrayXd& dirichlet_eigenvalues(const Grid& g);

/// Interior-node quadrature onto the sine basis.  Reads only nodes strictly
/// inside D; exact inverse of sine_synthesis on those nodes.
SineCoeffs sine_analysis(const RealField& f);

/// Evaluates the sine series on the interior nodes of D and extends by zero.
RealField sine_synthesis(const SineCoeffs& c);

/// Heat semigroup P_t: coefficient-wise exp(-sigma2 lambda_k t).  t >= 0.
SineCoeffs semigroup_apply(const SineCoeffs& c, double t, double sigma2);

/// Fractional power A^{alpha/2}: coefficient-wise (sigma2 lambda_k)^{alpha/2}.
SineCoeffs fractional_power_apply(const SineCoeffs& c, double alpha, double sigma2);

/// Domain-side Sobolev norm (sum (1+sigma2 lambda_k)^s |c_k|^2)^{1/2}.
double eigen_norm(const SineCoeffs& c, const EigenIndex& idx, double sigma2);

/// ||P_t w||_{E,1+delta} t^{(1+delta+beta)/2} / ||w||_{E,-beta}; the smoothing
/// estimate bounds this uniformly in t.  Requires 0 < beta < delta < 1/2, t > 0,
/// and w nonzero.
double smoothing_ratio(const SineCoeffs& w, double t, double delta, double beta, double sigma2);

/// ||P_t x - x||_{L2} / (t^alpha ||A^alpha x||_{L2}), the Holder-continuity
/// defect of the semigroup at the origin; at most 1 in this diagonal
/// realization.  Requires 0 < alpha <= 1 and A^alpha x nonzero.
double holder_defect(const SineCoeffs& x, double t, double alpha, double sigma2);

/// Gradient of the represented field evaluated on the closed box nodes
/// (cosine series along the differentiated axis) and extended by zero.
VectorField sine_gradient_embedded(const SineCoeffs& c);

}  // namespace ftlab
