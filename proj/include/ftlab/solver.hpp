#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ftlab/dirichlet.hpp"
#include "ftlab/field.hpp"
#include "ftlab/noise.hpp"

namespace ftlab {

enum class InitialKind { InteriorBump, EigenmodeSmooth };

InitialKind initial_kind_from_string(const std::string& s);
std::string to_string(InitialKind k);

/// Analytic and discretization parameters of one solver run.  The strict
/// parameter inequalities of the existence theorem are enforced by validate().
struct SolverConfig {
  double beta = 0.2;
  double delta = 0.3;
  double gamma = 0.2;
  double q = 4.0;
  double sigma2 = 1.0;
  double horizon = 0.5;      // T
  int time_steps = 64;       // M_t; the path has time_steps + 1 nodes
  double rho = 1.0;
  bool rho_auto = true;
  double tol_picard = 1e-8;
  double tol_product = 1e-6;
  int max_iter = 30;
  Grid grid;
  InitialKind u0_kind = InitialKind::InteriorBump;
  std::uint64_t seed = 1;    // root seed for every random draw of a study

  /// Violated invariants, empty when the configuration is admissible.
  std::vector<std::string> violations() const;
  void require_valid() const;

  double dt() const { return horizon / time_steps; }
};

/// Time-indexed sequence of sine-basis states on the uniform grid
/// t_m = m T / M_t, the discrete stand-in for a Holder-in-time path.
struct TimePath {
  Eigen::ArrayXd times;
  std::vector<SineCoeffs> states;

  static TimePath zero(const SolverConfig& cfg);
  Eigen::Index nodes() const { return times.size(); }
};

TimePath path_axpy(double a, const TimePath& x, double b, const TimePath& y);

/// Measured value of one analytic estimate.
struct BoundReport {
  std::string name;
  double measured = 0.0;
  double reference = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string params;
};

/// Exponentially weighted Holder norm
/// sup_t e^{-rho t} (||p(t)||_{E,s} + sup_{r<t} ||p(t)-p(r)||_{E,s}/(t-r)^gamma),
/// exact discrete sup over all node pairs.  rho = 0 gives the plain norm.
double weighted_holder_norm(const TimePath& p, double rho, double gamma, double s, double sigma2);

/// Initial condition of the requested kind, unit-amplitude, supported in D.
SineCoeffs make_initial_condition(const SolverConfig& cfg);

/// Fraction of the squared E-norm mass at order s carried by the top half of
/// the mode range; a refinement-drift proxy for "norm finite".
double norm_tail_fraction(const SineCoeffs& u, double s, double sigma2);

/// The heat-flow summand P_t u0 sampled on the time grid.
TimePath initial_term(const SineCoeffs& u0, const SolverConfig& cfg);

/// Volterra integral I_t(u) = integral_0^t P_{t-r} <grad u(r), grad Z> dr.
/// Product integration in the eigenbasis: the transport product is
/// interpolated linearly between nodes and the kernel exp(-sigma2 lambda_k
/// (t-r)) is integrated exactly per subinterval.  The output path starts at 0.
struct IntegralResult {
  TimePath path;
  double max_leakage = 0.0;
  bool products_converged = true;
  std::vector<int> unconverged_nodes;
};
IntegralResult integral_operator(const TimePath& p, const RealField& Z, const SolverConfig& cfg);

/// Picard iteration for the mild solution u = P_. u0 + I(u).
struct PicardResult {
  TimePath path;
  bool converged = false;
  int iterations = 0;
  double rho_used = 1.0;
  std::vector<double> diff_norms;
  std::vector<double> ratios;
  double max_leakage = 0.0;
  bool products_converged = true;
  std::vector<std::string> warnings;
  double wallclock_s = 0.0;
};

enum class PicardStart { FromInitialTerm, FromZero };

PicardResult picard_solve(const RealField& Z, const SolverConfig& cfg,
                          PicardStart start = PicardStart::FromInitialTerm);

/// Smooth random path with finite weighted Holder norm: spectrally weighted
/// eigenmode amplitudes driven by low-order cosine series in time.
TimePath random_test_path(const SolverConfig& cfg, std::uint64_t seed);

/// Empirical contraction constants c(rho) = max over pair differences of
/// ||I(u)-I(v)||^{(rho)} / ||u-v||^{(rho)}, one report per rho plus a final
/// log-log slope report against the theoretical decay exponent.
std::vector<BoundReport> contraction_estimate(const RealField& Z, const SolverConfig& cfg,
                                              const std::vector<double>& rhos);

/// Quadrature checks of the singular integral bounds: the Gamma-function
/// bound for the weighted integral and the stability of the fitted constant
/// in the doubly singular variant.
std::vector<BoundReport> verify_gamma_bounds(double theta, double gamma_exp,
                                             const std::vector<double>& rhos,
                                             const std::vector<double>& t_grid);

}  // namespace ftlab
