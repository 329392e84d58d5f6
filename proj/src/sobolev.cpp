#include "ftlab/sobolev.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "ftlab/rng.hpp"
#include "ftlab/spectral.hpp"

namespace ftlab {

namespace {

double lp_sum(const Eigen::ArrayXd& v, double p) {
  if (p == 2.0) return v.square().sum();
  if (p == 4.0) return v.square().square().sum();
  return v.abs().pow(p).sum();
}

// Zig-zag encodes a signed frequency pair into a resolution-independent key.
std::uint64_t mode_key(int k0, int k1) {
  auto zz = [](int k) -> std::uint64_t {
    return k >= 0 ? 2ULL * static_cast<std::uint64_t>(k)
                  : 2ULL * static_cast<std::uint64_t>(-k) - 1ULL;
  };
  return (zz(k0) << 24) ^ zz(k1);
}

}  // namespace

double lp_norm(const RealField& f, double p) {
  const double h = f.grid.spacing();
  return std::pow(lp_sum(f.values, p) * std::pow(h, f.grid.dim), 1.0 / p);
}

double norm_Hsp(const RealField& f, const SobolevIndex& idx) {
  if (!(idx.p >= 2.0) || !std::isfinite(idx.p))
    throw std::invalid_argument("norm_Hsp: p must be finite and >= 2");
  return lp_norm(bessel_potential(f, idx.s), idx.p);
}

double norm_Hs_coeff(const RealField& f, double s) {
  const Grid& g = f.grid;
  const SpectralCoeffs c = dft_forward(f);
  double acc = 0.0;
  const int n = g.n;
  if (g.dim == 1) {
    for (int m = 0; m < n; ++m) {
      const double xi = g.freq(m);
      acc += std::pow(1.0 + xi * xi, s) * std::norm(c.coeffs[m]);
    }
  } else {
    for (int m0 = 0; m0 < n; ++m0) {
      const double xi0 = g.freq(m0);
      for (int m1 = 0; m1 < n; ++m1) {
        const double xi1 = g.freq(m1);
        acc += std::pow(1.0 + xi0 * xi0 + xi1 * xi1, s) *
               std::norm(c.coeffs[static_cast<Eigen::Index>(m0) * n + m1]);
      }
    }
  }
  return std::sqrt(acc * std::pow(g.side, g.dim));
}

std::pair<double, double> tilde_norm(const RealField& f, const SobolevIndex& idx) {
  if (!(idx.s > -0.5))
    throw std::domain_error("tilde_norm: order must exceed -1/2");
  const double norm = norm_Hsp(f, idx);
  auto [inside, leakage] = restrict_to_domain(f);
  (void)inside;
  return {norm, leakage};
}

double besov_increment_norm(const RealField& f, double alpha_prime, double p) {
  if (!(alpha_prime > 0.0) || !(alpha_prime < 1.0))
    throw std::invalid_argument("besov_increment_norm: alpha' must lie in (0,1)");
  const Grid& g = f.grid;
  const int n = g.n;
  const double h = g.spacing();
  const int reach = static_cast<int>(std::floor(1.0 / h));
  const double cell = std::pow(h, g.dim);
  const double lp_weight = cell;  // weight inside the increment L_p norms

  double acc = 0.0;
  if (g.dim == 1) {
    for (int m = -reach; m <= reach; ++m) {
      if (m == 0) continue;
      const double y = m * h;
      if (std::abs(y) > 1.0) continue;
      double s = 0.0;
      for (int i = 0; i < n; ++i) {
        const int j = (i + m % n + n) % n;
        const double d = f.values[j] - f.values[i];
        s += (p == 2.0) ? d * d : std::pow(std::abs(d), p);
      }
      const double inc = std::pow(s * lp_weight, 2.0 / p);
      acc += inc / std::pow(std::abs(y), g.dim + 2.0 * alpha_prime) * cell;
    }
  } else {
    for (int m0 = -reach; m0 <= reach; ++m0) {
      for (int m1 = -reach; m1 <= reach; ++m1) {
        if (m0 == 0 && m1 == 0) continue;
        const double y = h * std::sqrt(double(m0) * m0 + double(m1) * m1);
        if (y > 1.0) continue;
        double s = 0.0;
        const int s0 = (m0 % n + n) % n;
        const int s1 = (m1 % n + n) % n;
        for (int i0 = 0; i0 < n; ++i0) {
          const Eigen::Index row = static_cast<Eigen::Index>(i0) * n;
          const Eigen::Index srow = static_cast<Eigen::Index>((i0 + s0) % n) * n;
          for (int i1 = 0; i1 < n; ++i1) {
            const double d = f.values[srow + (i1 + s1) % n] - f.values[row + i1];
            s += (p == 2.0) ? d * d : (p == 4.0) ? d * d * d * d : std::pow(std::abs(d), p);
          }
        }
        const double inc = std::pow(s * lp_weight, 2.0 / p);
        acc += inc / std::pow(y, g.dim + 2.0 * alpha_prime) * cell;
      }
    }
  }
  return lp_norm(f, p) + std::sqrt(acc);
}

RealField random_field_with_regularity(const Grid& g, double s, std::uint64_t seed) {
  constexpr double eps = 0.05;
  const int n = g.n;
  SpectralCoeffs c(g);
  const double expo = -0.5 * (s + 0.5 * g.dim + eps);

  auto draw_pair = [&](std::uint64_t key) {
    SplitMix64 rng(mix_seed(seed, seed_tag::regularity_field, key));
    const double a = rng.gaussian();
    const double b = rng.gaussian();
    return Complex(a, b) / std::sqrt(2.0);
  };

  auto std_dev = [&](double xi_sq) { return std::pow(1.0 + xi_sq, expo); };

  if (g.dim == 1) {
    for (int m = 0; m < n; ++m) {
      const int k = g.freq_index(m);
      if (k == -n / 2) continue;  // Nyquist zeroed, keeps refinements nested
      if (k == 0) {
        SplitMix64 rng(mix_seed(seed, seed_tag::regularity_field, mode_key(0, 0)));
        c.coeffs[m] = Complex(rng.gaussian(), 0.0) * std_dev(0.0);
      } else if (k > 0) {
        const double xi = g.freq(m);
        const Complex z = draw_pair(mode_key(k, 0)) * std_dev(xi * xi);
        c.coeffs[m] = z;
        c.coeffs[n - m] = std::conj(z);
      }
    }
  } else {
    for (int m0 = 0; m0 < n; ++m0) {
      const int k0 = g.freq_index(m0);
      if (k0 == -n / 2) continue;
      for (int m1 = 0; m1 < n; ++m1) {
        const int k1 = g.freq_index(m1);
        if (k1 == -n / 2) continue;
        const bool canonical = k0 > 0 || (k0 == 0 && k1 > 0);
        const Eigen::Index i = static_cast<Eigen::Index>(m0) * n + m1;
        if (k0 == 0 && k1 == 0) {
          SplitMix64 rng(mix_seed(seed, seed_tag::regularity_field, mode_key(0, 0)));
          c.coeffs[i] = Complex(rng.gaussian(), 0.0) * std_dev(0.0);
        } else if (canonical) {
          const double xi0 = g.freq(m0), xi1 = g.freq(m1);
          const Complex z = draw_pair(mode_key(k0, k1)) * std_dev(xi0 * xi0 + xi1 * xi1);
          c.coeffs[i] = z;
          const Eigen::Index mi =
              static_cast<Eigen::Index>(m0 == 0 ? 0 : n - m0) * n + (m1 == 0 ? 0 : n - m1);
          c.coeffs[mi] = std::conj(z);
        }
      }
    }
  }
  return dft_inverse(c);
}

HolderEstimate holder_exponent_estimate(const RealField& f) {
  const Grid& g = f.grid;
  const int n = g.n;
  std::vector<double> log_h, log_sup;

  for (int lag = 2; lag * g.spacing() <= g.side / 8.0 + 1e-12; lag *= 2) {
    double sup = 0.0;
    if (g.dim == 1) {
      for (int i = 0; i + lag < n; ++i)
        sup = std::max(sup, std::abs(f.values[i + lag] - f.values[i]));
    } else {
      for (int i0 = 0; i0 < n; ++i0)
        for (int i1 = 0; i1 < n; ++i1) {
          const double v = f.values[f.flat(i0, i1)];
          if (i0 + lag < n) sup = std::max(sup, std::abs(f.values[f.flat(i0 + lag, i1)] - v));
          if (i1 + lag < n) sup = std::max(sup, std::abs(f.values[f.flat(i0, i1 + lag)] - v));
        }
    }
    if (sup <= 0.0) continue;
    log_h.push_back(std::log(lag * g.spacing()));
    log_sup.push_back(std::log(sup));
  }

  if (log_h.size() < 2) return {1.0, true};

  // least-squares slope
  const auto m = static_cast<double>(log_h.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < log_h.size(); ++i) {
    sx += log_h[i];
    sy += log_sup[i];
    sxx += log_h[i] * log_h[i];
    sxy += log_h[i] * log_sup[i];
  }
  const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  return {std::clamp(slope, 0.0, 1.0), false};
}

}  // namespace ftlab
