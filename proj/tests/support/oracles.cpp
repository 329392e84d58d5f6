#include "oracles.hpp"

#include <cmath>
#include <complex>

#include "ftlab/dirichlet.hpp"
#include "ftlab/paraproduct.hpp"
#include "ftlab/rng.hpp"
#include "ftlab/spectral.hpp"

namespace ftlab::oracle {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

SpectralCoeffs dft_direct(const RealField& f) {
  const Grid& g = f.grid;
  const int n = g.n;
  SpectralCoeffs out(g);
  if (g.dim == 1) {
    for (int m = 0; m < n; ++m) {
      Complex acc(0.0, 0.0);
      for (int j = 0; j < n; ++j) {
        const double phase = -2.0 * kPi * m * j / n;
        acc += f.values[j] * Complex(std::cos(phase), std::sin(phase));
      }
      out.coeffs[m] = acc / static_cast<double>(n);
    }
  } else {
    for (int m0 = 0; m0 < n; ++m0)
      for (int m1 = 0; m1 < n; ++m1) {
        Complex acc(0.0, 0.0);
        for (int j0 = 0; j0 < n; ++j0)
          for (int j1 = 0; j1 < n; ++j1) {
            const double phase = -2.0 * kPi * (m0 * j0 + m1 * j1) / n;
            acc += f.values[f.flat(j0, j1)] * Complex(std::cos(phase), std::sin(phase));
          }
        out.coeffs[static_cast<Eigen::Index>(m0) * n + m1] = acc / static_cast<double>(n * n);
      }
  }
  return out;
}

RealField random_field(const Grid& g, std::uint64_t seed) {
  RealField f(g);
  SplitMix64 rng(mix_seed(seed, 0x7e57, 0));
  for (Eigen::Index i = 0; i < f.values.size(); ++i) f.values[i] = rng.gaussian();
  return f;
}

double weighted_holder_norm_direct(const TimePath& p, double rho, double gamma, double s,
                                   double sigma2) {
  const Eigen::ArrayXd& lambda = dirichlet_eigenvalues(p.states.front().grid);
  auto norm_at = [&](const Eigen::ArrayXd& c) {
    double acc = 0.0;
    for (Eigen::Index k = 0; k < c.size(); ++k)
      acc += std::pow(1.0 + sigma2 * lambda[k], s) * c[k] * c[k];
    return std::sqrt(acc);
  };
  double best = 0.0;
  for (Eigen::Index m = 0; m < p.nodes(); ++m) {
    const double value = norm_at(p.states[static_cast<std::size_t>(m)].coeffs);
    double holder = 0.0;
    for (Eigen::Index r = 0; r < m; ++r) {
      const Eigen::ArrayXd diff =
          p.states[static_cast<std::size_t>(m)].coeffs - p.states[static_cast<std::size_t>(r)].coeffs;
      holder = std::max(holder, norm_at(diff) / std::pow(p.times[m] - p.times[r], gamma));
    }
    best = std::max(best, std::exp(-rho * p.times[m]) * (value + holder));
  }
  return best;
}

TimePath classical_reference_solution(const SineCoeffs& u0, const RealField& Z,
                                      const SolverConfig& cfg, int refine) {
  const Grid& g = cfg.grid;
  const Eigen::ArrayXd& lambda = dirichlet_eigenvalues(g);
  const VectorField grad_z = gradient(Z);

  // classical drift: pointwise grid product of the gradients, sine-analyzed
  auto drift = [&](const SineCoeffs& u) {
    const VectorField gu = sine_gradient_embedded(u);
    RealField sum(g);
    for (int axis = 0; axis < g.dim; ++axis)
      sum.values += gu.components[static_cast<std::size_t>(axis)].values *
                    grad_z.components[static_cast<std::size_t>(axis)].values;
    auto [restricted, leak] = restrict_to_domain(sum);
    (void)leak;
    return sine_analysis(restricted);
  };

  const int steps = cfg.time_steps * refine;
  const double dt = cfg.horizon / steps;
  const Eigen::ArrayXd z = cfg.sigma2 * lambda * dt;
  Eigen::ArrayXd decay(z.size()), phi1(z.size()), phi2(z.size());
  for (Eigen::Index k = 0; k < z.size(); ++k) {
    const double w = z[k];
    decay[k] = std::exp(-w);
    if (w < 1e-5) {
      phi1[k] = 1.0 - w / 2.0 + w * w / 6.0;
      phi2[k] = 0.5 - w / 3.0 + w * w / 8.0;
    } else {
      phi1[k] = (1.0 - decay[k]) / w;
      phi2[k] = (1.0 - decay[k] - w * decay[k]) / (w * w);
    }
  }

  TimePath out = TimePath::zero(cfg);
  SineCoeffs u = u0;
  out.states[0] = u;
  int node = 1;
  for (int s = 1; s <= steps; ++s) {
    const SineCoeffs f0 = drift(u);
    SineCoeffs mid(g);
    mid.coeffs = decay * u.coeffs + dt * phi1 * f0.coeffs;
    const SineCoeffs f1 = drift(mid);
    SineCoeffs next(g);
    next.coeffs = mid.coeffs + dt * phi2 * (f1.coeffs - f0.coeffs);
    u = next;
    if (s % refine == 0) out.states[static_cast<std::size_t>(node++)] = u;
  }
  return out;
}

}  // namespace ftlab::oracle
