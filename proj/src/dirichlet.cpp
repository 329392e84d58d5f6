#include "ftlab/dirichlet.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace ftlab {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Sampling matrices of the sine basis on the shared nodes, cached per box.
struct BasisTables {
  int modes = 0;              // M
  Eigen::MatrixXd sin_in;     // M x M, e-profile at interior nodes 1..M
  Eigen::MatrixXd dcos_all;   // M x (M+2), derivative profile at nodes 0..M+1
  Eigen::MatrixXd sin_all;    // M x (M+2), e-profile at nodes 0..M+1 (zero at ends)
  Eigen::ArrayXd lambda_axis; // (pi/ell)^2 k^2 per axis mode
};

struct BoxKey {
  int modes;
  double ell;
  auto operator<=>(const BoxKey&) const = default;
};

const BasisTables& tables_for(const Grid& g) {
  static std::map<BoxKey, BasisTables> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);

  const int modes = g.sine_modes();
  const BoxKey key{modes, g.domain_side};
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  BasisTables t;
  t.modes = modes;
  const double ell = g.domain_side;
  const double amp = std::sqrt(2.0 / ell);
  t.sin_in.resize(modes, modes);
  t.sin_all.resize(modes, modes + 2);
  t.dcos_all.resize(modes, modes + 2);
  t.lambda_axis.resize(modes);
  for (int k = 1; k <= modes; ++k) {
    t.lambda_axis[k - 1] = (kPi / ell) * (kPi / ell) * k * k;
    for (int node = 0; node <= modes + 1; ++node) {
      const double phase = kPi * k * node / (modes + 1);
      t.sin_all(k - 1, node) = amp * std::sin(phase);
      t.dcos_all(k - 1, node) = amp * (kPi * k / ell) * std::cos(phase);
    }
    t.sin_in.row(k - 1) = t.sin_all.row(k - 1).segment(1, modes);
  }
  return cache.emplace(key, std::move(t)).first->second;
}

}  // namespace

const Eigen::ArrayXd& dirichlet_eigenvalues(const Grid& g) {
  struct LambdaKey {
    int modes;
    int dim;
    double ell;
    auto operator<=>(const LambdaKey&) const = default;
  };
  static std::map<LambdaKey, Eigen::ArrayXd> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);

  const LambdaKey key{g.sine_modes(), g.dim, g.domain_side};
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  const int m = key.modes;
  const double c = (kPi / g.domain_side) * (kPi / g.domain_side);
  Eigen::ArrayXd lambda(SineCoeffs::size_for(g));
  if (g.dim == 1) {
    for (int k = 1; k <= m; ++k) lambda[k - 1] = c * k * k;
  } else {
    for (int k0 = 1; k0 <= m; ++k0)
      for (int k1 = 1; k1 <= m; ++k1)
        lambda[static_cast<Eigen::Index>(k0 - 1) * m + (k1 - 1)] =
            c * (static_cast<double>(k0) * k0 + static_cast<double>(k1) * k1);
  }
  return cache.emplace(key, std::move(lambda)).first->second;
}

SineCoeffs sine_analysis(const RealField& f) {
  const Grid& g = f.grid;
  const BasisTables& t = tables_for(g);
  const int m = t.modes;
  const double h = g.spacing();
  const int first0 = g.domain_first_node(0);
  SineCoeffs out(g);

  if (g.dim == 1) {
    Eigen::VectorXd interior(m);
    for (int i = 0; i < m; ++i) interior[i] = f.values[first0 + 1 + i];
    out.coeffs = (t.sin_in * interior).array() * h;
  } else {
    const int first1 = g.domain_first_node(1);
    Eigen::MatrixXd interior(m, m);
    for (int i0 = 0; i0 < m; ++i0)
      for (int i1 = 0; i1 < m; ++i1)
        interior(i0, i1) = f.values[f.flat(first0 + 1 + i0, first1 + 1 + i1)];
    Eigen::MatrixXd coef = t.sin_in * interior * t.sin_in.transpose() * (h * h);
    // Column-major data of the transpose is the row-major (k0-major) flatten.
    Eigen::MatrixXd rowmaj = coef.transpose();
    out.coeffs = Eigen::Map<Eigen::ArrayXd>(rowmaj.data(), rowmaj.size());
  }
  return out;
}

RealField sine_synthesis(const SineCoeffs& c) {
  const Grid& g = c.grid;
  const BasisTables& t = tables_for(g);
  const int m = t.modes;
  const int first0 = g.domain_first_node(0);
  RealField out(g);

  if (g.dim == 1) {
    Eigen::VectorXd vals = t.sin_in.transpose() * c.coeffs.matrix();
    for (int i = 0; i < m; ++i) out.values[first0 + 1 + i] = vals[i];
  } else {
    const int first1 = g.domain_first_node(1);
    Eigen::MatrixXd coef(m, m);
    for (int k0 = 0; k0 < m; ++k0)
      for (int k1 = 0; k1 < m; ++k1)
        coef(k0, k1) = c.coeffs[static_cast<Eigen::Index>(k0) * m + k1];
    Eigen::MatrixXd vals = t.sin_in.transpose() * coef * t.sin_in;
    for (int i0 = 0; i0 < m; ++i0)
      for (int i1 = 0; i1 < m; ++i1)
        out.values[out.flat(first0 + 1 + i0, first1 + 1 + i1)] = vals(i0, i1);
  }
  return out;
}

SineCoeffs semigroup_apply(const SineCoeffs& c, double t, double sigma2) {
  if (t < 0.0) throw std::invalid_argument("semigroup_apply: time must be nonnegative");
  const Eigen::ArrayXd& lambda = dirichlet_eigenvalues(c.grid);
  return SineCoeffs(c.grid, c.coeffs * (-sigma2 * t * lambda).exp());
}

SineCoeffs fractional_power_apply(const SineCoeffs& c, double alpha, double sigma2) {
  if (alpha == 0.0) return c;
  const Eigen::ArrayXd& lambda = dirichlet_eigenvalues(c.grid);
  return SineCoeffs(c.grid, c.coeffs * (sigma2 * lambda).pow(0.5 * alpha));
}

double eigen_norm(const SineCoeffs& c, const EigenIndex& idx, double sigma2) {
  const Eigen::ArrayXd& lambda = dirichlet_eigenvalues(c.grid);
  return std::sqrt(((1.0 + sigma2 * lambda).pow(idx.s) * c.coeffs.square()).sum());
}

double smoothing_ratio(const SineCoeffs& w, double t, double delta, double beta, double sigma2) {
  if (!(0.0 < beta && beta < delta && delta < 0.5))
    throw std::invalid_argument("smoothing_ratio: need 0 < beta < delta < 1/2");
  if (!(t > 0.0)) throw std::invalid_argument("smoothing_ratio: time must be positive");
  const double denom = eigen_norm(w, EigenIndex{-beta}, sigma2);
  if (denom < 1e-300) throw std::invalid_argument("smoothing_ratio: zero input");
  const double num = eigen_norm(semigroup_apply(w, t, sigma2), EigenIndex{1.0 + delta}, sigma2);
  return num * std::pow(t, 0.5 * (1.0 + delta + beta)) / denom;
}

double holder_defect(const SineCoeffs& x, double t, double alpha, double sigma2) {
  if (!(alpha > 0.0) || !(alpha <= 1.0))
    throw std::invalid_argument("holder_defect: alpha must lie in (0,1]");
  const double denom = fractional_power_apply(x, 2.0 * alpha, sigma2).l2();
  if (denom < 1e-300) throw std::invalid_argument("holder_defect: A^alpha x vanishes");
  const SineCoeffs moved = semigroup_apply(x, t, sigma2);
  const double num = std::sqrt((moved.coeffs - x.coeffs).square().sum());
  return num / (std::pow(t, alpha) * denom);
}

VectorField sine_gradient_embedded(const SineCoeffs& c) {
  const Grid& g = c.grid;
  const BasisTables& t = tables_for(g);
  const int m = t.modes;
  const int first0 = g.domain_first_node(0);
  VectorField grad(g);

  if (g.dim == 1) {
    Eigen::VectorXd vals = t.dcos_all.transpose() * c.coeffs.matrix();
    for (int i = 0; i <= m + 1; ++i)
      grad.components[0].values[first0 + i] = vals[i];
  } else {
    const int first1 = g.domain_first_node(1);
    Eigen::MatrixXd coef(m, m);
    for (int k0 = 0; k0 < m; ++k0)
      for (int k1 = 0; k1 < m; ++k1)
        coef(k0, k1) = c.coeffs[static_cast<Eigen::Index>(k0) * m + k1];

    // axis 0: cosine profile along x0, sine along x1 (vanishes at x1 ends)
    Eigen::MatrixXd g0 = t.dcos_all.transpose() * coef * t.sin_all;
    // axis 1: sine along x0, cosine along x1
    Eigen::MatrixXd g1 = t.sin_all.transpose() * coef * t.dcos_all;
    for (int i0 = 0; i0 <= m + 1; ++i0)
      for (int i1 = 0; i1 <= m + 1; ++i1) {
        const Eigen::Index flat = grad.components[0].flat(first0 + i0, first1 + i1);
        grad.components[0].values[flat] = g0(i0, i1);
        grad.components[1].values[flat] = g1(i0, i1);
      }
  }
  return grad;
}

}  // namespace ftlab
