#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace midground {

/// Values of a function at `n` uniformly spaced nodes spanning [lo, hi],
/// endpoints included.
class Grid1D {
 public:
  Grid1D(double lo, double hi, std::vector<double> values);

  /// Tabulates `f` at `n` nodes.
  static Grid1D tabulate(double lo, double hi, std::size_t n,
                         const std::function<double(double)>& f);

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  std::size_t size() const noexcept { return values_.size(); }
  double spacing() const noexcept {
    return (hi_ - lo_) / static_cast<double>(values_.size() - 1);
  }
  double node(std::size_t i) const noexcept;
  std::span<const double> values() const noexcept { return values_; }

  /// Piecewise-linear interpolant; zero outside [lo, hi].
  double interpolate(double x) const noexcept;

  /// Exact integral of the interpolant over [lo, hi] (trapezoid rule).
  double trapezoid() const noexcept;

  bool same_layout(const Grid1D& other) const noexcept;

 private:
  double lo_;
  double hi_;
  std::vector<double> values_;
};

double erf(double x) noexcept;
double erfc(double x) noexcept;

/// Inverse of erf on (-1, 1). Throws DomainError elsewhere.
double erf_inv(double p);
/// Inverse of erfc on (0, 2). Throws DomainError elsewhere.
double erfc_inv(double q);

/// Standard normal CDF and quantile.
double normal_cdf(double x) noexcept;
double normal_quantile(double u);

/// log Gamma(x) for x > 0 (reentrant).
double log_gamma(double x) noexcept;
double log_beta(double a, double b) noexcept;

/// Regularized incomplete beta function I_x(a, b).
double reg_inc_beta(double a, double b, double x);

/// Quantile of the Beta(a, b) distribution by root-finding on reg_inc_beta.
double beta_quantile(double q, double a, double b);

inline constexpr double kDefaultQuadratureTolerance = 1e-10;

struct QuadratureOptions {
  double abs_tol = kDefaultQuadratureTolerance;
  double rel_tol = 0.0;
  std::size_t max_segments = 20000;
};

/// Globally adaptive Gauss-Kronrod (7/15) quadrature. Converged when the
/// summed error estimate is below max(abs_tol, rel_tol * |result|); throws
/// ConvergenceError when max_segments is exhausted first.
double integrate(const std::function<double(double)>& f, double lo, double hi,
                 double tol = kDefaultQuadratureTolerance);
double integrate(const std::function<double(double)>& f, double lo, double hi,
                 const QuadratureOptions& options);

/// Same, seeded with the interior break points in `points` (sorted or not);
/// use for integrands with known kinks.
double integrate(const std::function<double(double)>& f, double lo, double hi,
                 std::span<const double> points,
                 const QuadratureOptions& options);

struct RootBracket {
  double root;  // best estimate
  double lo;    // final bracket, f(lo) and f(hi) of opposite sign (or zero)
  double hi;
  double f_lo;
  double f_hi;
};

/// Brent's method on a sign-changing bracket. Terminates once the bracket is
/// no wider than `tol` or an exact zero is hit. Throws BracketError if
/// f(lo) and f(hi) have the same strict sign.
RootBracket find_root_bracketed(const std::function<double(double)>& f,
                                double lo, double hi, double tol,
                                std::size_t max_iterations = 500);

double find_root(const std::function<double(double)>& f, double lo, double hi,
                 double tol);

}  // namespace midground
