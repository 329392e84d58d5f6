#include "ftlab/quadrature.hpp"

#include <stdexcept>

namespace ftlab {

namespace {

double simpson_step(const std::function<double(double)>& f, double a, double fa, double b,
                    double fb, double m, double fm, double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_depth) {
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fb = f(b), fm = f(m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_step(f, a, fa, b, fb, m, fm, whole, tol, max_depth);
}

double singular_exp_integral(double s, double t, double rho, double theta, double tol) {
  if (!(theta >= 0.0 && theta < 1.0))
    throw std::invalid_argument("singular_exp_integral: need 0 <= theta < 1");
  if (!(t > s && s >= 0.0)) throw std::invalid_argument("singular_exp_integral: need 0 <= s < t");
  const double q = 1.0 - theta;
  // r = y^{1/q}: dr = (1/q) y^{1/q - 1} dy, r^{-theta} dr = (1/q) dy
  auto integrand = [rho, q](double y) { return std::exp(-rho * std::pow(y, 1.0 / q)); };
  return adaptive_simpson(integrand, std::pow(s, q), std::pow(t, q), tol) / q;
}

double doubly_singular_integral(double t, double rho, double theta, double gamma, double tol) {
  if (!(theta >= 0.0 && theta < 1.0 && gamma >= 0.0 && theta + gamma < 1.0))
    throw std::invalid_argument("doubly_singular_integral: need theta, gamma >= 0, theta+gamma < 1");
  if (!(t > 0.0)) throw std::invalid_argument("doubly_singular_integral: need t > 0");

  const double mid = 0.5 * t;
  // left half, singular at r = 0: substitute r = v^{1/(1-gamma)}
  const double qg = 1.0 - gamma;
  auto left = [rho, t, theta, qg](double v) {
    const double r = std::pow(v, 1.0 / qg);
    return std::exp(-rho * (t - r)) * std::pow(t - r, -theta) / qg;
  };
  // right half, singular at r = t: substitute t - r = u^{1/(1-theta)}
  const double qt = 1.0 - theta;
  auto right = [rho, t, gamma, qt](double u) {
    const double tr = std::pow(u, 1.0 / qt);
    return std::exp(-rho * tr) * std::pow(t - tr, -gamma) / qt;
  };
  return adaptive_simpson(left, 0.0, std::pow(mid, qg), tol) +
         adaptive_simpson(right, 0.0, std::pow(mid, qt), tol);
}

}  // namespace ftlab
