#include "ftlab/paraproduct.hpp"

#include <cmath>
#include <stdexcept>

#include "ftlab/sobolev.hpp"
#include "ftlab/spectral.hpp"

namespace ftlab {

namespace {

constexpr int kFirstLevel = 2;   // below this the window keeps only DC
constexpr int kLevelOffset = 3;

double max_grid_frequency(const Grid& g) {
  return 3.14159265358979323846 * g.n / g.side;
}

}  // namespace

RealField smooth_truncate(const RealField& f, int j) {
  const double scale = std::pow(2.0, j);
  SpectralCoeffs c = dft_forward(f);
  c = apply_multiplier(c, [scale](const Eigen::Vector2d& xi) {
    const double r = xi.norm() / scale;
    // plateau 1 on r <= 1, zero from r >= 3/2
    return Complex(smooth_step(2.0 * (1.5 - r)), 0.0);
  });
  return dft_inverse(c);
}

int truncation_saturation_level(const Grid& g) {
  return static_cast<int>(std::ceil(std::log2(max_grid_frequency(g))));
}

namespace {

// Largest frequency carrying numerically relevant mass; the truncation limit
// cannot be judged converged before the window plateau reaches this band.
double active_band(const SpectralCoeffs& c) {
  const Grid& g = c.grid;
  const double top = c.coeffs.abs().maxCoeff();
  if (top <= 0.0) return 0.0;
  const double threshold = 1e-13 * top;
  double band = 0.0;
  const int n = g.n;
  if (g.dim == 1) {
    for (int m = 0; m < n; ++m)
      if (std::abs(c.coeffs[m]) > threshold) band = std::max(band, std::abs(g.freq(m)));
  } else {
    for (int m0 = 0; m0 < n; ++m0)
      for (int m1 = 0; m1 < n; ++m1)
        if (std::abs(c.coeffs[static_cast<Eigen::Index>(m0) * n + m1]) > threshold)
          band = std::max(band, std::hypot(g.freq(m0), g.freq(m1)));
  }
  return band;
}

}  // namespace

ProductReport paraproduct_product(const RealField& f, const RealField& g, double tol,
                                  double beta_probe) {
  require_same_grid(f.grid, g.grid, "paraproduct_product");
  const Grid& grid = f.grid;
  const int j_cap = std::max(static_cast<int>(std::floor(std::log2(grid.n / 3.0))) + kLevelOffset,
                             truncation_saturation_level(grid) + 1);

  // a vanishing successive difference is meaningless while the window still
  // hides part of either factor's band, so gate the stop on coverage
  const double covered = std::max(active_band(dft_forward(f)), active_band(dft_forward(g)));
  const int j_floor = covered > 0.0
                          ? std::max(kFirstLevel + 1,
                                     static_cast<int>(std::ceil(std::log2(covered))) + 1)
                          : kFirstLevel + 1;

  ProductReport report;
  RealField previous(grid);
  double scale = 0.0;
  {
    RealField tf = smooth_truncate(f, kFirstLevel);
    RealField tg = smooth_truncate(g, kFirstLevel);
    previous.values = tf.values * tg.values;
    scale = norm_Hs_coeff(previous, -beta_probe);
  }

  for (int j = kFirstLevel + 1; j <= j_cap; ++j) {
    RealField tf = smooth_truncate(f, j);
    RealField tg = smooth_truncate(g, j);
    RealField current(grid, tf.values * tg.values);

    RealField diff(grid, current.values - previous.values);
    const double diff_norm = norm_Hs_coeff(diff, -beta_probe);
    scale = std::max(scale, norm_Hs_coeff(current, -beta_probe));
    report.tail = relative_or_absolute(diff_norm, scale);
    report.j_used = j;
    previous = std::move(current);

    if (j >= j_floor && report.tail < tol) {
      report.converged = true;
      break;
    }
  }
  report.value = std::move(previous);
  return report;
}

double product_estimate_ratio(const RealField& f, const RealField& g, double delta, double beta,
                              double p, double q) {
  if (!(0.0 < beta && beta < delta))
    throw std::invalid_argument("product_estimate_ratio: need 0 < beta < delta");
  const int d = f.grid.dim;
  if (!(q > std::max(p, d / delta)))
    throw std::invalid_argument("product_estimate_ratio: need q > max(p, d/delta)");

  // Run the truncated-product limit all the way out; band-limited inputs
  // saturate immediately, everything else at the level cap.
  ProductReport prod = paraproduct_product(f, g, 0.0, beta);
  const double num = norm_Hsp(prod.value, {-beta, p});
  const double df = norm_Hsp(f, {delta, p});
  const double dg = norm_Hsp(g, {-beta, q});
  if (df < 1e-14 || dg < 1e-14)
    throw std::domain_error("product_estimate_ratio: degenerate denominator");
  return num / (df * dg);
}

TransportProduct transport_product(const SineCoeffs& u, const RealField& Z, double tol,
                                   double beta_probe) {
  require_same_grid(u.grid, Z.grid, "transport_product");
  const Grid& grid = u.grid;

  const VectorField grad_u = sine_gradient_embedded(u);
  const VectorField grad_z = gradient(Z);

  TransportProduct out;
  RealField sum(grid);
  out.report.converged = true;
  for (int axis = 0; axis < grid.dim; ++axis) {
    ProductReport r = paraproduct_product(grad_u.components[static_cast<std::size_t>(axis)],
                                          grad_z.components[static_cast<std::size_t>(axis)], tol,
                                          beta_probe);
    sum.values += r.value.values;
    out.report.j_used = std::max(out.report.j_used, r.j_used);
    out.report.tail = std::max(out.report.tail, r.tail);
    out.report.converged = out.report.converged && r.converged;
  }

  auto [restricted, leakage] = restrict_to_domain(sum);
  out.leakage = leakage;
  out.value = sine_analysis(restricted);
  return out;
}

}  // namespace ftlab
