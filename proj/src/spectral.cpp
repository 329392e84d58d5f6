#include "ftlab/spectral.hpp"

#include <unsupported/Eigen/FFT>

#include <stdexcept>

namespace ftlab {

namespace {

Eigen::FFT<double>& fft_engine() {
  thread_local Eigen::FFT<double> fft = [] {
    Eigen::FFT<double> f;
    f.SetFlag(Eigen::FFT<double>::Unscaled);
    return f;
  }();
  return fft;
}

enum class Direction { Forward, Inverse };

// Unscaled multi-dimensional complex DFT, one 1-d pass per axis.
void transform(Eigen::ArrayXcd& data, const Grid& g, Direction dir) {
  auto& fft = fft_engine();
  const int n = g.n;
  Eigen::VectorXcd in(n), out(n);

  auto run = [&](Eigen::VectorXcd& v) {
    if (dir == Direction::Forward)
      fft.fwd(out, v);
    else
      fft.inv(out, v);
  };

  if (g.dim == 1) {
    in = data.matrix();
    run(in);
    data = out.array();
    return;
  }

  // rows: contiguous
  for (int r = 0; r < n; ++r) {
    in = data.segment(static_cast<Eigen::Index>(r) * n, n).matrix();
    run(in);
    data.segment(static_cast<Eigen::Index>(r) * n, n) = out.array();
  }
  // columns: strided gather/scatter
  for (int c = 0; c < n; ++c) {
    for (int r = 0; r < n; ++r) in[r] = data[static_cast<Eigen::Index>(r) * n + c];
    run(in);
    for (int r = 0; r < n; ++r) data[static_cast<Eigen::Index>(r) * n + c] = out[r];
  }
}

// Storage slot of the frequency -k given the slot of k along one axis.
inline int mirror_slot(int m, int n) { return m == 0 ? 0 : n - m; }

}  // namespace

SpectralCoeffs dft_forward(const RealField& f) {
  Eigen::ArrayXcd buf = f.values.cast<Complex>();
  transform(buf, f.grid, Direction::Forward);
  buf /= static_cast<double>(f.grid.size());
  return SpectralCoeffs(f.grid, std::move(buf));
}

double hermitian_defect(const SpectralCoeffs& c) {
  const Grid& g = c.grid;
  const int n = g.n;
  double max_abs = 0.0, max_diff = 0.0;
  if (g.dim == 1) {
    for (int m = 0; m < n; ++m) {
      const Complex a = c.coeffs[m];
      const Complex b = std::conj(c.coeffs[mirror_slot(m, n)]);
      max_abs = std::max(max_abs, std::abs(a));
      max_diff = std::max(max_diff, std::abs(a - b));
    }
  } else {
    for (int m0 = 0; m0 < n; ++m0)
      for (int m1 = 0; m1 < n; ++m1) {
        const Complex a = c.coeffs[static_cast<Eigen::Index>(m0) * n + m1];
        const Complex b = std::conj(
            c.coeffs[static_cast<Eigen::Index>(mirror_slot(m0, n)) * n + mirror_slot(m1, n)]);
        max_abs = std::max(max_abs, std::abs(a));
        max_diff = std::max(max_diff, std::abs(a - b));
      }
  }
  return relative_or_absolute(max_diff, max_abs);
}

RealField dft_inverse(const SpectralCoeffs& c) {
  if (hermitian_defect(c) > 1e-10)
    throw std::invalid_argument("dft_inverse: coefficients are not Hermitian symmetric");
  Eigen::ArrayXcd buf = c.coeffs;
  transform(buf, c.grid, Direction::Inverse);
  return RealField(c.grid, buf.real());
}

SpectralCoeffs apply_multiplier(const SpectralCoeffs& c,
                                const std::function<Complex(const Eigen::Vector2d&)>& symbol) {
  const Grid& g = c.grid;
  SpectralCoeffs out(g);
  Eigen::Vector2d xi = Eigen::Vector2d::Zero();
  const int n = g.n;
  if (g.dim == 1) {
    for (int m = 0; m < n; ++m) {
      xi[0] = g.freq(m);
      const Complex s = symbol(xi);
      if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
        throw std::invalid_argument("apply_multiplier: non-finite symbol value");
      out.coeffs[m] = c.coeffs[m] * s;
    }
  } else {
    for (int m0 = 0; m0 < n; ++m0) {
      xi[0] = g.freq(m0);
      for (int m1 = 0; m1 < n; ++m1) {
        xi[1] = g.freq(m1);
        const Complex s = symbol(xi);
        if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
          throw std::invalid_argument("apply_multiplier: non-finite symbol value");
        const Eigen::Index i = static_cast<Eigen::Index>(m0) * n + m1;
        out.coeffs[i] = c.coeffs[i] * s;
      }
    }
  }
  return out;
}

RealField bessel_potential(const RealField& f, double s) {
  SpectralCoeffs c = dft_forward(f);
  c = apply_multiplier(c, [s](const Eigen::Vector2d& xi) {
    return Complex(std::pow(1.0 + xi.squaredNorm(), 0.5 * s), 0.0);
  });
  return dft_inverse(c);
}

VectorField gradient(const RealField& f) {
  const Grid& g = f.grid;
  SpectralCoeffs c = dft_forward(f);
  VectorField grad(g);
  // The Nyquist slice is the unique most-negative frequency; match it with
  // half a frequency step of slack rather than exact float equality.
  const double pi = 3.14159265358979323846;
  const double nyquist_cut = -pi * g.n / g.side + pi / g.side;
  for (int axis = 0; axis < g.dim; ++axis) {
    SpectralCoeffs dc = apply_multiplier(c, [axis, nyquist_cut](const Eigen::Vector2d& xi) {
      if (xi[axis] < nyquist_cut) return Complex(0.0, 0.0);
      return Complex(0.0, xi[axis]);
    });
    grad.components[static_cast<std::size_t>(axis)] = dft_inverse(dc);
  }
  return grad;
}

double smooth_step(double x) {
  auto s = [](double y) { return y > 0.0 ? std::exp(-1.0 / y) : 0.0; };
  const double a = s(x);
  const double b = s(1.0 - x);
  if (a == 0.0) return 0.0;
  if (b == 0.0) return 1.0;
  return a / (a + b);
}

RealField build_cutoff(const Grid& g) {
  g.validate();
  RealField psi(g);
  const int n = g.n;
  const double w = g.cutoff_width;
  auto axis_profile = [&](int axis, int i) {
    const double t = g.axis_distance(axis, g.coord(i));
    return smooth_step(1.0 - t / w);
  };
  if (g.dim == 1) {
    for (int i = 0; i < n; ++i) psi.values[i] = axis_profile(0, i);
  } else {
    Eigen::ArrayXd p0(n), p1(n);
    for (int i = 0; i < n; ++i) {
      p0[i] = axis_profile(0, i);
      p1[i] = axis_profile(1, i);
    }
    for (int i0 = 0; i0 < n; ++i0)
      for (int i1 = 0; i1 < n; ++i1) psi.values[psi.flat(i0, i1)] = p0[i0] * p1[i1];
  }
  return psi;
}

std::pair<RealField, double> restrict_to_domain(const RealField& f) {
  const Grid& g = f.grid;
  RealField out(g);
  double removed_sq = 0.0;
  const int n = g.n;
  std::array<int, 2> idx{0, 0};
  for (int i0 = 0; i0 < n; ++i0) {
    idx[0] = i0;
    if (g.dim == 1) {
      const double v = f.values[i0];
      if (g.node_in_domain(idx))
        out.values[i0] = v;
      else
        removed_sq += v * v;
    } else {
      for (int i1 = 0; i1 < n; ++i1) {
        idx[1] = i1;
        const Eigen::Index flat = f.flat(i0, i1);
        const double v = f.values[flat];
        if (g.node_in_domain(idx))
          out.values[flat] = v;
        else
          removed_sq += v * v;
      }
    }
  }
  const double weight = std::pow(g.spacing(), g.dim);
  const double leak = std::sqrt(removed_sq * weight);
  return {std::move(out), relative_or_absolute(leak, l2_norm(f))};
}

double l2_norm(const RealField& f) {
  return std::sqrt(f.values.square().sum() * std::pow(f.grid.spacing(), f.grid.dim));
}

double relative_or_absolute(double numerator, double denominator) {
  if (denominator < 1e-14) return numerator;
  return numerator / denominator;
}

}  // namespace ftlab
