#include "midground/mean_interval.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "midground/errors.hpp"
#include "midground/numerics.hpp"

namespace midground {

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;
// sqrt(pi / 8): converts scaled widths back to width * sqrt(N).
constexpr double kUnscale = 0.62665706865775012560;
// Gaussian tails are cut where they drop below 1e-16 of their value at the
// nearest integration limit.
const double kTailLogDrop = std::log(1e16);

void check_design_level(double p) {
  if (!(p > 0.49 && p < 1.0)) {
    throw DomainError(
        "randomization width is only defined for belief levels in (0.49, 1)");
  }
}

double scaled_argument(double d, double p) {
  return (1.0 / p - 1.0) * (d - std::erf(kSqrtPi * d));
}

}  // namespace

AdmissibleRange admissible_delta_range(double p) {
  check_design_level(p);
  const double k = 1.0 / p - 1.0;
  const double lo =
      find_root([](double d) { return d - std::erf(kSqrtPi * d); }, 0.5, 2.0,
                1e-15);
  const double hi = find_root(
      [&](double d) { return scaled_argument(d, p) - 1.0; }, lo,
      lo + 2.0 + 1.0 / k, 1e-14);
  return {lo, hi};
}

double scaled_halfwidth(double delta_tilde, double p) {
  check_design_level(p);
  const double u = scaled_argument(delta_tilde, p);
  if (!(u > 0.0 && u <= 1.0)) return std::numeric_limits<double>::infinity();
  return delta_tilde + (2.0 / kSqrtPi) * erfc_inv(u);
}

double scaled_halfwidth_slope(double delta_tilde, double p) {
  check_design_level(p);
  const double u = scaled_argument(delta_tilde, p);
  if (!(u > 0.0 && u <= 1.0)) return std::numeric_limits<double>::quiet_NaN();
  const double x = erfc_inv(u);
  const double du = (1.0 / p - 1.0) *
                    (1.0 - 2.0 * std::exp(-std::numbers::pi * delta_tilde *
                                          delta_tilde));
  return 1.0 - std::exp(x * x) * du;
}

OptimalDelta optimal_delta_scaled(double p) {
  check_design_level(p);
  const AdmissibleRange range = admissible_delta_range(p);
  double d = range.hi;
  if (scaled_halfwidth_slope(range.hi, p) > 0.0) {
    d = find_root([&](double t) { return scaled_halfwidth_slope(t, p); },
                  range.lo + 1e-9, range.hi, 1e-13);
  }
  const double D = scaled_halfwidth(d, p);
  return {d, D, d * kUnscale, D * kUnscale};
}

double optimal_delta(double p, int n) {
  if (n <= 0) throw DomainError("sample count must be positive");
  return optimal_delta_scaled(p).delta_sqrt_n / std::sqrt(n);
}

double asymptotic_halfwidth_mean(double p, int n) {
  if (n <= 0) throw DomainError("sample count must be positive");
  return optimal_delta_scaled(p).Delta_sqrt_n / std::sqrt(n);
}

// ---------------------------------------------------------------------------

MeanProblem MeanProblem::make(int n_samples, double sample_mean,
                              double statistic, double delta,
                              std::uint64_t seed) {
  if (n_samples <= 0) throw DomainError("MeanProblem: N must be positive");
  if (!(sample_mean >= 0.0 && sample_mean <= 1.0)) {
    throw DomainError("MeanProblem: sample mean must lie in [0, 1]");
  }
  if (!(delta > 0.0 && std::isfinite(delta))) {
    throw DomainError("MeanProblem: delta must be positive");
  }
  if (!(std::abs(statistic - sample_mean) <= delta)) {
    throw DomainError("MeanProblem: |statistic - sample_mean| exceeds delta");
  }
  return {n_samples, sample_mean, statistic, delta, seed};
}

double randomize_statistic(double sample_mean, double delta, Rng& rng) {
  if (!(delta >= 0.0)) throw DomainError("delta must be nonnegative");
  return sample_mean + delta * (2.0 * uniform01(rng) - 1.0);
}

MeanProblem draw_mean_problem(int n_samples, double sample_mean, double p,
                              std::uint64_t seed) {
  const double delta = optimal_delta(p, n_samples);
  Rng rng(seed);
  const double s = randomize_statistic(sample_mean, delta, rng);
  return MeanProblem::make(n_samples, sample_mean, s, delta, seed);
}

double HoeffdingBoundPair::g_minus(double mu) const noexcept {
  const double t = statistic - delta - mu;
  return std::exp(-2.0 * n_samples * t * t);
}

double HoeffdingBoundPair::g_plus(double mu) const noexcept {
  const double t = statistic + delta - mu;
  return std::exp(-2.0 * n_samples * t * t);
}

// ---------------------------------------------------------------------------

MeanLikelihood::MeanLikelihood(const MeanProblem& problem)
    : problem_(problem), bounds_(problem), positive_radius_(0.0) {
  const double n = problem.n_samples;
  const double delta = problem.delta;
  if (2.0 * std::exp(-2.0 * n * delta * delta) < 1.0) {
    auto gap = [&](double t) {
      return 1.0 - std::exp(-2.0 * n * (delta - t) * (delta - t)) -
             std::exp(-2.0 * n * (delta + t) * (delta + t));
    };
    positive_radius_ = find_root(gap, 0.0, delta, 1e-15 * delta);
  }
}

double MeanLikelihood::lower(double mu) const noexcept {
  if (!(std::abs(mu - problem_.statistic) < problem_.delta)) return 0.0;
  return std::max(0.0, 1.0 - bounds_.g_minus(mu) - bounds_.g_plus(mu));
}

double MeanLikelihood::upper(double mu) const noexcept {
  if (mu <= problem_.statistic - problem_.delta) return bounds_.g_minus(mu);
  if (mu >= problem_.statistic + problem_.delta) return bounds_.g_plus(mu);
  return 1.0;
}

double MeanLikelihood::evaluate(Interval interval, double mu) const noexcept {
  return interval.contains(mu) ? lower(mu) : upper(mu);
}

double MeanLikelihood::prior_integral(const Prior1D& prior,
                                      const std::function<double(double)>& f,
                                      double a, double b) const {
  a = std::max(a, prior.lo());
  b = std::min(b, prior.hi());
  if (!(a < b)) return 0.0;
  QuadratureOptions opts;
  opts.abs_tol = 1e-14 * problem_.delta;
  opts.rel_tol = 1e-11;
  return integrate([&](double mu) { return prior.density(mu) * f(mu); }, a, b,
                   prior.kinks(a, b), opts);
}

double MeanLikelihood::tail_mass(const Prior1D& prior, double a, double b,
                                 bool left) const {
  if (!(a < b)) return 0.0;
  const double reach = kTailLogDrop / (2.0 * problem_.n_samples);
  if (left) {
    const double edge = problem_.statistic - problem_.delta;
    const double x0 = edge - b;
    a = std::max(a, edge - std::sqrt(x0 * x0 + reach));
    return prior_integral(
        prior, [this](double mu) { return bounds_.g_minus(mu); }, a, b);
  }
  const double edge = problem_.statistic + problem_.delta;
  const double x0 = a - edge;
  b = std::min(b, edge + std::sqrt(x0 * x0 + reach));
  return prior_integral(prior,
                        [this](double mu) { return bounds_.g_plus(mu); }, a, b);
}

double MeanLikelihood::upper_mass(const Prior1D& prior, double a,
                                  double b) const {
  a = std::max(a, prior.lo());
  b = std::min(b, prior.hi());
  if (!(a < b)) return 0.0;
  const double left_edge = problem_.statistic - problem_.delta;
  const double right_edge = problem_.statistic + problem_.delta;
  double total = tail_mass(prior, a, std::min(b, left_edge), true);
  total += prior_integral(
      prior, [](double) { return 1.0; }, std::max(a, left_edge),
      std::min(b, right_edge));
  total += tail_mass(prior, std::max(a, right_edge), b, false);
  return total;
}

double MeanLikelihood::lower_mass(const Prior1D& prior, double a,
                                  double b) const {
  a = std::max(a, problem_.statistic - positive_radius_);
  b = std::min(b, problem_.statistic + positive_radius_);
  return prior_integral(
      prior, [this](double mu) { return lower(mu); }, a, b);
}

double likelihood_bounds(const MeanProblem& problem, double Delta, double mu) {
  if (!(Delta >= problem.delta)) {
    throw DomainError("likelihood_bounds: require Delta >= delta");
  }
  const MeanLikelihood likelihood(problem);
  return likelihood.evaluate(
      {problem.statistic - Delta, problem.statistic + Delta}, mu);
}

namespace {

double ratio_or_throw(double inside, double outside) {
  if (!(inside + outside > 0.0)) {
    throw DegeneratePosteriorError(
        "prior places no mass where the likelihood bounds are positive");
  }
  return inside / (inside + outside);
}

}  // namespace

double belief_for_interval(const MeanProblem& problem, const Prior1D& prior,
                           Interval interval) {
  if (interval.lo > interval.hi) {
    throw DomainError("belief: interval requires lo <= hi");
  }
  const MeanLikelihood likelihood(problem);
  const double inside = likelihood.lower_mass(prior, interval.lo, interval.hi);
  const double outside =
      likelihood.upper_mass(prior, prior.lo(), interval.lo) +
      likelihood.upper_mass(prior, interval.hi, prior.hi());
  return ratio_or_throw(inside, outside);
}

double belief(const MeanProblem& problem, const Prior1D& prior, double Delta) {
  if (!(Delta >= problem.delta)) {
    throw DomainError("belief: require Delta >= delta");
  }
  return belief_for_interval(
      problem, prior, {problem.statistic - Delta, problem.statistic + Delta});
}

MeanIntervalResult solve_halfwidth(const MeanProblem& problem,
                                   const Prior1D& prior, double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("belief level p must lie in (0, 1)");
  }
  const MeanLikelihood likelihood(problem);
  const double s = problem.statistic;
  // Delta >= delta keeps the whole positive region of the lower bound inside
  // the interval, so only the outside mass depends on Delta.
  const double inside = likelihood.lower_mass(prior, prior.lo(), prior.hi());
  if (!(inside > 0.0)) {
    throw UnachievableError(
        "the lower likelihood bound has no prior mass; no interval reaches p");
  }
  auto belief_at = [&](double Delta) {
    const double outside = likelihood.upper_mass(prior, prior.lo(), s - Delta) +
                           likelihood.upper_mass(prior, s + Delta, prior.hi());
    return inside / (inside + outside);
  };

  const double full = std::max({problem.delta, s - prior.lo(), prior.hi() - s});
  if (belief_at(full) < p) {
    throw UnachievableError("belief level p exceeds the full-support belief");
  }
  double Delta = problem.delta;
  double reached = belief_at(Delta);
  if (reached < p) {
    const RootBracket bracket = find_root_bracketed(
        [&](double D) { return belief_at(D) - p; }, problem.delta, full, 1e-8);
    Delta = bracket.f_lo >= 0.0 ? bracket.lo : bracket.hi;
    reached = belief_at(Delta);
  }
  const Interval raw{s - Delta, s + Delta};
  return {raw.clipped(0.0, 1.0), reached, Delta};
}

}  // namespace midground
