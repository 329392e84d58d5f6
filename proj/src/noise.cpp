#include "ftlab/noise.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "ftlab/rng.hpp"
#include "ftlab/sobolev.hpp"
#include "ftlab/spectral.hpp"

namespace ftlab {

namespace {

constexpr double kPi = 3.14159265358979323846;

// fGn autocovariance at integer lag k for unit-spaced increments of variance h^{2H}.
double fgn_cov(int k, double hurst, double h) {
  auto pw = [hurst](double x) { return std::pow(std::abs(x), 2.0 * hurst); };
  return 0.5 * std::pow(h, 2.0 * hurst) * (pw(k + 1.0) - 2.0 * pw(k) + pw(k - 1.0));
}

std::uint64_t levy_mode_key(int k0, int k1) {
  auto zz = [](int k) -> std::uint64_t {
    return k >= 0 ? 2ULL * static_cast<std::uint64_t>(k)
                  : 2ULL * static_cast<std::uint64_t>(-k) - 1ULL;
  };
  return (zz(k0) << 24) ^ zz(k1);
}

// Unscaled complex FFT used by the circulant embedding.
void fft_inplace(Eigen::VectorXcd& v, bool forward) {
  thread_local Eigen::FFT<double> fft = [] {
    Eigen::FFT<double> f;
    f.SetFlag(Eigen::FFT<double>::Unscaled);
    return f;
  }();
  Eigen::VectorXcd out(v.size());
  if (forward)
    fft.fwd(out, v);
  else
    fft.inv(out, v);
  v.swap(out);
}

// The spectral synthesis runs on a torus oversampled by this factor per
// axis, pushing the infrared cutoff down; the band below the first
// oversampled mode is carried by a random linear component.
constexpr int kLevyOversample = 4;

// Power spectrum of the unit-amplitude Levy synthesis at a signed frequency
// pair of the oversampled lattice.
double levy_spectrum_xi(double xi_sq, double hurst, int dim) {
  if (xi_sq == 0.0) return 0.0;
  return std::pow(xi_sq, -0.5 * (2.0 * hurst + dim));
}

// Per-axis variance of the linear infrared term: the spectral mass of the
// band |xi| < (lattice spacing)/2, density-matched to the lattice sum.
double levy_slope_variance(const Grid& g, double hurst) {
  const double dxi = 2.0 * kPi / (kLevyOversample * g.side);
  const double xi0 = 0.5 * dxi;
  const double p = 2.0 - 2.0 * hurst;
  if (g.dim == 1) return (2.0 / dxi) * std::pow(xi0, p) / p;
  return (kPi / (dxi * dxi)) * std::pow(xi0, p) / p;
}

// Exact lattice value of Var[B(x)] = 2 (C(0) - C(x)) + slope term for the
// unit-amplitude synthesis; the Monte-Carlo variance converges to this sum.
double levy_variance_at(const Grid& g, double hurst, const Eigen::Vector2d& x) {
  const int nb = kLevyOversample * g.n;
  const double side_big = kLevyOversample * g.side;
  auto freq = [&](int m) {
    const int k = m < nb / 2 ? m : m - nb;
    return 2.0 * kPi * k / side_big;
  };
  double acc = 0.0;
  if (g.dim == 1) {
    for (int m = 1; m < nb; ++m) {
      if (m == nb / 2) continue;
      const double xi = freq(m);
      acc += levy_spectrum_xi(xi * xi, hurst, 1) * (1.0 - std::cos(xi * x[0]));
    }
  } else {
    for (int m0 = 0; m0 < nb; ++m0) {
      if (m0 == nb / 2) continue;
      const double xi0 = freq(m0);
      for (int m1 = 0; m1 < nb; ++m1) {
        if (m1 == nb / 2 || (m0 == 0 && m1 == 0)) continue;
        const double xi1 = freq(m1);
        acc += levy_spectrum_xi(xi0 * xi0 + xi1 * xi1, hurst, 2) *
               (1.0 - std::cos(xi0 * x[0] + xi1 * x[1]));
      }
    }
  }
  return 2.0 * acc + levy_slope_variance(g, hurst) * x.squaredNorm();
}

double levy_calibration(const Grid& g, double hurst) {
  struct Key {
    int n;
    int dim;
    double side;
    double hurst;
    auto operator<=>(const Key&) const = default;
  };
  static std::map<Key, double> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  const Key key{g.n, g.dim, g.side, hurst};
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  const double x_ref = 0.25;
  Eigen::Vector2d x = Eigen::Vector2d::Zero();
  if (g.dim == 1) {
    x[0] = x_ref;
  } else {
    x[0] = x[1] = x_ref / std::sqrt(2.0);
  }
  const double raw = levy_variance_at(g, hurst, x);
  const double target = std::pow(x_ref, 2.0 * hurst);
  const double scale = target / raw;
  cache.emplace(key, scale);
  return scale;
}

}  // namespace

void NoiseSpec::validate() const {
  if (!(hurst > 0.0) || !(hurst < 1.0))
    throw std::invalid_argument("NoiseSpec: Hurst parameter must lie in (0,1)");
  if (band < 0) throw std::invalid_argument("NoiseSpec: band must be nonnegative");
}

NoiseKind noise_kind_from_string(const std::string& s) {
  if (s == "fbm1d_exact") return NoiseKind::Fbm1dExact;
  if (s == "levy_spectral") return NoiseKind::LevySpectral;
  if (s == "smooth_test") return NoiseKind::SmoothTest;
  throw std::invalid_argument("unknown noise kind: " + s);
}

std::string to_string(NoiseKind k) {
  switch (k) {
    case NoiseKind::Fbm1dExact: return "fbm1d_exact";
    case NoiseKind::LevySpectral: return "levy_spectral";
    case NoiseKind::SmoothTest: return "smooth_test";
  }
  return "?";
}

RealField synthesize_fbm_1d(const NoiseSpec& spec, const Grid& g) {
  spec.validate();
  if (g.dim != 1)
    throw std::invalid_argument("synthesize_fbm_1d: requires a 1-d grid");

  const int n_inc = g.n - 1;          // increments between the n nodes
  const int m = 2 * n_inc;            // circulant embedding size
  const double h = g.spacing();

  Eigen::VectorXcd circ(m);
  for (int i = 0; i < m; ++i) {
    const int lag = i <= n_inc ? i : m - i;
    circ[i] = Complex(fgn_cov(lag, spec.hurst, h), 0.0);
  }
  fft_inplace(circ, true);

  for (int i = 0; i < m; ++i) {
    const double ev = circ[i].real();
    if (ev < -1e-9)
      throw std::runtime_error("synthesize_fbm_1d: circulant embedding not nonnegative");
  }

  // One complex Gaussian per circulant slot; the real part of the transform
  // carries covariance (1/m) sum_k ev_k cos(2 pi k lag / m), the embedded row.
  SplitMix64 rng(mix_seed(spec.seed, seed_tag::fbm_path, 0));
  Eigen::VectorXcd z(m);
  for (int i = 0; i < m; ++i) z[i] = Complex(rng.gaussian(), rng.gaussian());
  for (int i = 0; i < m; ++i) {
    const double ev = std::max(circ[i].real(), 0.0);
    z[i] *= std::sqrt(ev / m);
  }
  fft_inplace(z, false);

  RealField out(g);
  double acc = 0.0;
  out.values[0] = 0.0;
  for (int i = 0; i < n_inc; ++i) {
    acc += z[i].real();
    out.values[i + 1] = acc;
  }
  return out;
}

RealField synthesize_levy_fbm(const NoiseSpec& spec, const Grid& g) {
  spec.validate();
  if (g.dim != 1 && g.dim != 2)
    throw std::invalid_argument("synthesize_levy_fbm: unsupported dimension");

  const int nb = kLevyOversample * g.n;
  const double side_big = kLevyOversample * g.side;
  const double amp_scale = std::sqrt(levy_calibration(g, spec.hurst));

  auto draw = [&](std::uint64_t key) {
    SplitMix64 rng(mix_seed(spec.seed, seed_tag::levy_field, key));
    const double a = rng.gaussian();
    const double b = rng.gaussian();
    return Complex(a, b) / std::sqrt(2.0);
  };
  auto freq = [&](int m) {
    const int k = m < nb / 2 ? m : m - nb;
    return 2.0 * kPi * k / side_big;
  };

  // Hermitian Gaussian spectrum on the oversampled lattice
  Eigen::ArrayXcd coeffs =
      Eigen::ArrayXcd::Zero(g.dim == 1 ? nb : static_cast<Eigen::Index>(nb) * nb);
  if (g.dim == 1) {
    for (int m = 1; m < nb / 2; ++m) {
      const double xi = freq(m);
      const double amp =
          amp_scale * std::sqrt(levy_spectrum_xi(xi * xi, spec.hurst, 1));
      const Complex z = draw(levy_mode_key(m, 0)) * amp;
      coeffs[m] = z;
      coeffs[nb - m] = std::conj(z);
    }
  } else {
    for (int m0 = 0; m0 < nb; ++m0) {
      if (m0 == nb / 2) continue;
      const int k0 = m0 < nb / 2 ? m0 : m0 - nb;
      for (int m1 = 0; m1 < nb; ++m1) {
        if (m1 == nb / 2) continue;
        const int k1 = m1 < nb / 2 ? m1 : m1 - nb;
        if (!(k0 > 0 || (k0 == 0 && k1 > 0))) continue;
        const double xi0 = freq(m0), xi1 = freq(m1);
        const double amp =
            amp_scale * std::sqrt(levy_spectrum_xi(xi0 * xi0 + xi1 * xi1, spec.hurst, 2));
        const Complex z = draw(levy_mode_key(k0, k1)) * amp;
        coeffs[static_cast<Eigen::Index>(m0) * nb + m1] = z;
        const Eigen::Index mi =
            static_cast<Eigen::Index>(m0 == 0 ? 0 : nb - m0) * nb + (m1 == 0 ? 0 : nb - m1);
        coeffs[mi] = std::conj(z);
      }
    }
  }

  // inverse transform on the big lattice, then subsample every K-th node
  Eigen::VectorXcd line(nb);
  if (g.dim == 1) {
    line = coeffs.matrix();
    fft_inplace(line, false);
    coeffs = line.array();
  } else {
    for (int r = 0; r < nb; ++r) {
      line = coeffs.segment(static_cast<Eigen::Index>(r) * nb, nb).matrix();
      fft_inplace(line, false);
      coeffs.segment(static_cast<Eigen::Index>(r) * nb, nb) = line.array();
    }
    for (int c = 0; c < nb; ++c) {
      for (int r = 0; r < nb; ++r) line[r] = coeffs[static_cast<Eigen::Index>(r) * nb + c];
      fft_inplace(line, false);
      for (int r = 0; r < nb; ++r) coeffs[static_cast<Eigen::Index>(r) * nb + c] = line[r];
    }
  }

  // linear infrared component, one slope per axis
  const double slope_sigma =
      amp_scale * std::sqrt(levy_slope_variance(g, spec.hurst));
  double slope[2] = {0.0, 0.0};
  for (int axis = 0; axis < g.dim; ++axis) {
    SplitMix64 rng(mix_seed(spec.seed, seed_tag::levy_field,
                            0xabcd0000ULL + static_cast<std::uint64_t>(axis)));
    slope[axis] = slope_sigma * rng.gaussian();
  }

  // the big torus has the same node spacing; our cell is its first n nodes
  RealField field(g);
  if (g.dim == 1) {
    for (int i = 0; i < g.n; ++i)
      field.values[i] = coeffs[i].real() + slope[0] * g.coord(i);
  } else {
    for (int i0 = 0; i0 < g.n; ++i0)
      for (int i1 = 0; i1 < g.n; ++i1)
        field.values[field.flat(i0, i1)] =
            coeffs[static_cast<Eigen::Index>(i0) * nb + i1].real() +
            slope[0] * g.coord(i0) + slope[1] * g.coord(i1);
  }
  field.values -= field.values[0];  // pin B = 0 at the origin node
  return field;
}

RealField synthesize_smooth_test(const NoiseSpec& spec, const Grid& g) {
  spec.validate();
  SpectralCoeffs c(g);
  const int n = g.n;
  SplitMix64 rng(mix_seed(spec.seed, seed_tag::smooth_test, 0));

  auto sign = [&]() { return rng.next() & 1 ? 1.0 : -1.0; };

  if (g.dim == 1) {
    for (int k = 1; k <= spec.band && k < n / 2; ++k) {
      const double a = sign() / (1.0 + k);
      c.coeffs[k] = Complex(0.5 * a, 0.0);
      c.coeffs[n - k] = Complex(0.5 * a, 0.0);
    }
  } else {
    for (int k0 = 1; k0 <= spec.band && k0 < n / 2; ++k0) {
      const double a = sign() / (1.0 + k0);
      c.coeffs[static_cast<Eigen::Index>(k0) * n] = Complex(0.5 * a, 0.0);
      c.coeffs[static_cast<Eigen::Index>(n - k0) * n] = Complex(0.5 * a, 0.0);
    }
    for (int k0 = 0; k0 <= spec.band && k0 < n / 2; ++k0)
      for (int k1 = 1; k1 <= spec.band && k1 < n / 2; ++k1) {
        const double a = sign() / (1.0 + k0 + k1);
        const Eigen::Index i = static_cast<Eigen::Index>(k0) * n + k1;
        const Eigen::Index mi = static_cast<Eigen::Index>(k0 == 0 ? 0 : n - k0) * n + (n - k1);
        c.coeffs[i] = Complex(0.5 * a, 0.0);
        c.coeffs[mi] = Complex(0.5 * a, 0.0);
      }
  }
  return dft_inverse(c);
}

RealField synthesize_noise(const NoiseSpec& spec, const Grid& g) {
  switch (spec.kind) {
    case NoiseKind::Fbm1dExact: return synthesize_fbm_1d(spec, g);
    case NoiseKind::LevySpectral: return synthesize_levy_fbm(spec, g);
    case NoiseKind::SmoothTest: return synthesize_smooth_test(spec, g);
  }
  throw std::logic_error("synthesize_noise: unreachable");
}

RealField make_noise_Z(const RealField& B, const RealField& psi) {
  require_same_grid(B.grid, psi.grid, "make_noise_Z");
  return RealField(B.grid, B.values * psi.values);
}

RegularityReport sobolev_regularity_report(const RealField& Z, double one_minus_beta, double q) {
  if (!(q >= 2.0)) throw std::invalid_argument("sobolev_regularity_report: q must be >= 2");
  const Grid& g = Z.grid;
  if (g.n < 32)
    throw std::invalid_argument("sobolev_regularity_report: grid too coarse to halve");

  Grid coarse(g.dim, g.n / 2, g.side, g.domain_offset, g.domain_side, g.cutoff_width);
  RealField zc(coarse);
  if (g.dim == 1) {
    for (int i = 0; i < coarse.n; ++i) zc.values[i] = Z.values[2 * i];
  } else {
    for (int i0 = 0; i0 < coarse.n; ++i0)
      for (int i1 = 0; i1 < coarse.n; ++i1)
        zc.values[zc.flat(i0, i1)] = Z.values[Z.flat(2 * i0, 2 * i1)];
  }

  RegularityReport rep;
  rep.norm_fine = norm_Hsp(Z, {one_minus_beta, q});
  rep.norm_coarse = norm_Hsp(zc, {one_minus_beta, q});
  rep.drift = relative_or_absolute(std::abs(rep.norm_fine - rep.norm_coarse), rep.norm_fine);
  rep.regular = rep.drift < 0.15;
  return rep;
}

}  // namespace ftlab
