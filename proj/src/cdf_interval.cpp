#include "midground/cdf_interval.hpp"

#include <cmath>

#include "midground/errors.hpp"

namespace midground {

namespace {

// Likelihood below exp(-kWindowLogDrop) of its peak is treated as zero.
constexpr double kWindowLogDrop = 45.0;

// log of theta^s (1-theta)^(n-s) relative to its value at `ref`, formed from
// ratios so that large n does not cancel catastrophically.
double log_shape_ratio(int n, int s, double theta, double ref) {
  const double below = s == 0 ? 0.0 : s * std::log1p((theta - ref) / ref);
  const double above =
      (n - s) == 0 ? 0.0 : (n - s) * std::log1p((ref - theta) / (1.0 - ref));
  return below + above;
}

double log_shape(int n, int s, double theta) {
  const double below = s == 0 ? 0.0 : s * std::log(theta);
  const double above = (n - s) == 0 ? 0.0 : (n - s) * std::log1p(-theta);
  return below + above;
}

void check_level(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("belief level p must lie in (0, 1)");
  }
}

}  // namespace

CdfProblem CdfProblem::make(int n_samples, int count_below, double threshold) {
  if (n_samples < 0 || count_below < 0 || count_below > n_samples) {
    throw DomainError("CdfProblem: require 0 <= count_below <= n_samples");
  }
  return {n_samples, count_below, threshold};
}

CdfProblem CdfProblem::from_samples(const std::vector<double>& samples,
                                    double threshold) {
  int below = 0;
  for (double x : samples) {
    if (x < threshold) ++below;
  }
  return make(static_cast<int>(samples.size()), below, threshold);
}

double log_binomial_likelihood(const CdfProblem& problem, double theta) {
  if (!(theta >= 0.0 && theta <= 1.0)) {
    throw DomainError("binomial_likelihood: theta must lie in [0, 1]");
  }
  const int n = problem.n_samples;
  const int s = problem.count_below;
  const double log_choose = log_gamma(n + 1.0) - log_gamma(s + 1.0) -
                            log_gamma(n - s + 1.0);
  return log_choose + log_shape(n, s, theta);
}

double binomial_likelihood(const CdfProblem& problem, double theta) {
  return std::exp(log_binomial_likelihood(problem, theta));
}

CdfPosterior::CdfPosterior(const CdfProblem& problem, const Prior1D& prior)
    : problem_(problem), prior_(prior) {
  const int n = problem.n_samples;
  const int s = problem.count_below;
  const double a = prior.lo();
  const double b = prior.hi();
  const double peak_at =
      n == 0 ? a : std::clamp(static_cast<double>(s) / n, a, b);
  peak_ = peak_at;

  auto above_floor = [&](double theta) {
    return log_shape_ratio(n, s, theta, peak_) + kWindowLogDrop;
  };
  double lo = a;
  double hi = b;
  if (n > 0) {
    const double tol = 1e-15 * (b - a);
    if (peak_at > a && above_floor(a) < 0.0) {
      lo = find_root_bracketed(above_floor, a, peak_at, tol).lo;
    }
    if (peak_at < b && above_floor(b) < 0.0) {
      hi = find_root_bracketed(above_floor, peak_at, b, tol).hi;
    }
  }
  window_ = {lo, hi};

  QuadratureOptions opts;
  opts.abs_tol = 1e-300;
  opts.rel_tol = 1e-12;
  std::vector<double> points = prior.kinks(lo, hi);
  points.push_back(peak_at);
  normalizer_ = integrate([this](double t) { return weight(t); }, lo, hi,
                          points, opts);
  if (!(normalizer_ > 0.0)) {
    throw DegeneratePosteriorError(
        "prior places no mass where the binomial likelihood is supported");
  }
}

double CdfPosterior::weight(double theta) const {
  const double d = prior_.density(theta);
  if (d == 0.0) return 0.0;
  return d * std::exp(log_shape_ratio(problem_.n_samples,
                                      problem_.count_below, theta, peak_));
}

double CdfPosterior::integral(double a, double b) const {
  a = std::max(a, window_.lo);
  b = std::min(b, window_.hi);
  if (!(a < b)) return 0.0;
  QuadratureOptions opts;
  opts.abs_tol = 1e-14 * normalizer_;
  opts.rel_tol = 1e-12;
  return integrate([this](double t) { return weight(t); }, a, b,
                   prior_.kinks(a, b), opts);
}

double CdfPosterior::mass(Interval interval) const {
  if (interval.lo > interval.hi) {
    throw DomainError("belief: interval requires lo <= hi");
  }
  return std::clamp(integral(interval.lo, interval.hi) / normalizer_, 0.0,
                    1.0);
}

double CdfPosterior::cdf(double theta) const {
  return std::clamp(integral(window_.lo, theta) / normalizer_, 0.0, 1.0);
}

double CdfPosterior::quantile(double q) const {
  if (!(q >= 0.0 && q <= 1.0)) {
    throw DomainError("quantile: probability must lie in [0, 1]");
  }
  if (q == 0.0) return window_.lo;
  if (q == 1.0) return window_.hi;
  const double tol = 1e-13 * (window_.hi - window_.lo);
  return find_root([&](double t) { return cdf(t) - q; }, window_.lo,
                   window_.hi, tol);
}

double belief(const CdfProblem& problem, const Prior1D& prior,
              Interval interval) {
  if (interval.lo > interval.hi) {
    throw DomainError("belief: interval requires lo <= hi");
  }
  const Interval clipped = interval.clipped(0.0, 1.0);
  if (clipped.lo == clipped.hi) return 0.0;
  return CdfPosterior(problem, prior).mass(clipped);
}

IntervalResult smallest_interval(const CdfProblem& problem,
                                 const Prior1D& prior, double p) {
  check_level(p);
  const CdfPosterior posterior(problem, prior);
  const Interval interval{posterior.quantile(0.5 * (1.0 - p)),
                          posterior.quantile(0.5 * (1.0 + p))};
  return {interval, posterior.mass(interval)};
}

double asymptotic_halfwidth(double p, double s_frac, int n) {
  check_level(p);
  if (!(s_frac > 0.0 && s_frac < 1.0)) {
    throw DomainError("asymptotic_halfwidth: s_frac must lie in (0, 1)");
  }
  if (n <= 0) throw DomainError("asymptotic_halfwidth: n must be positive");
  return std::sqrt(2.0 * s_frac * (1.0 - s_frac) / n) * erf_inv(p);
}

}  // namespace midground
