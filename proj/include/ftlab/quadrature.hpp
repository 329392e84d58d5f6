#pragma once

#include <cmath>
#include <functional>

namespace ftlab {

/// Adaptive Simpson quadrature on [a, b] to the requested absolute tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-10, int max_depth = 48);

/// integral_s^t exp(-rho r) r^{-theta} dr with the endpoint singularity
/// removed by the substitution r = y^{1/(1-theta)}.  0 <= theta < 1.
double singular_exp_integral(double s, double t, double rho, double theta, double tol = 1e-10);

/// integral_0^t exp(-rho (t-r)) (t-r)^{-theta} r^{-gamma} dr with both
/// endpoint singularities removed by substitution.  theta + gamma < 1.
double doubly_singular_integral(double t, double rho, double theta, double gamma,
                                double tol = 1e-10);

}  // namespace ftlab
