#pragma once

#include <cstdint>

#include "midground/interval.hpp"
#include "midground/priors.hpp"
#include "midground/random.hpp"

namespace midground {

// ---------------------------------------------------------------------------
// Asymptotic design of the randomization width.
//
// With scaled widths d = delta * sqrt(8N/pi) and D = Delta * sqrt(8N/pi) and
// a flat prior, the large-N half-width reaching belief p is
//
//   D(d) = d + (2/sqrt(pi)) erfc^{-1}( k (d - erf(sqrt(pi) d)) ),  k = 1/p - 1,
//
// defined while the erfc^{-1} argument lies in (0, 1). The randomization
// width is chosen to minimize D.

/// Open range of scaled widths d on which D(d) is finite and exceeds d.
struct AdmissibleRange {
  double lo;
  double hi;
};

struct OptimalDelta {
  double delta_tilde;   // minimizing d
  double Delta_tilde;   // D at the minimum
  double delta_sqrt_n;  // delta * sqrt(N)
  double Delta_sqrt_n;  // Delta * sqrt(N)
};

AdmissibleRange admissible_delta_range(double p);

/// D(d); +infinity outside the admissible range.
double scaled_halfwidth(double delta_tilde, double p);

/// dD/dd, computed analytically.
double scaled_halfwidth_slope(double delta_tilde, double p);

/// Minimizer of D(d). Requires p in (0.49, 1); throws DomainError otherwise.
/// For p < 0.5 the slope never turns positive and the minimum sits at the
/// upper edge of the admissible range, where D = d.
OptimalDelta optimal_delta_scaled(double p);

/// delta = (delta * sqrt(N)) / sqrt(N) for a target level p.
double optimal_delta(double p, int n);

/// Large-N half-width Delta for a flat prior.
double asymptotic_halfwidth_mean(double p, int n);

// ---------------------------------------------------------------------------
// Finite-sample construction.

/// Summary the mean algorithm is allowed to see: the randomized statistic
/// s = sample_mean + Z, Z ~ Uniform(-delta, delta), drawn once per dataset.
struct MeanProblem {
  int n_samples = 0;
  double sample_mean = 0.0;
  double statistic = 0.0;
  double delta = 0.0;
  std::uint64_t seed = 0;

  /// Validates N > 0, sample_mean in [0, 1], delta > 0 and
  /// |statistic - sample_mean| <= delta.
  static MeanProblem make(int n_samples, double sample_mean, double statistic,
                          double delta, std::uint64_t seed = 0);
};

/// s = sample_mean + Uniform(-delta, delta).
double randomize_statistic(double sample_mean, double delta, Rng& rng);

/// Builds a problem for level p: delta = optimal_delta(p, n), and Z drawn
/// from a generator seeded with `seed`.
MeanProblem draw_mean_problem(int n_samples, double sample_mean, double p,
                              std::uint64_t seed);

/// Hoeffding bounds g_-(mu) = exp(-2N (s - delta - mu)^2) and
/// g_+(mu) = exp(-2N (s + delta - mu)^2).
struct HoeffdingBoundPair {
  int n_samples;
  double statistic;
  double delta;

  explicit HoeffdingBoundPair(const MeanProblem& problem)
      : n_samples(problem.n_samples),
        statistic(problem.statistic),
        delta(problem.delta) {}

  double g_minus(double mu) const noexcept;
  double g_plus(double mu) const noexcept;
};

/// Bounds on 2 delta * b(s | mu).
///
/// `lower` is max(0, 1 - g_- - g_+) for |mu - s| < delta and 0 elsewhere;
/// `upper` is g_- below s - delta, g_+ above s + delta and 1 between.
class MeanLikelihood {
 public:
  explicit MeanLikelihood(const MeanProblem& problem);

  double lower(double mu) const noexcept;
  double upper(double mu) const noexcept;

  /// Lower bound inside `interval`, upper bound outside it.
  double evaluate(Interval interval, double mu) const noexcept;

  /// Integrals of prior * lower and prior * upper over [a, b].
  double lower_mass(const Prior1D& prior, double a, double b) const;
  double upper_mass(const Prior1D& prior, double a, double b) const;

  const MeanProblem& problem() const noexcept { return problem_; }
  /// The lower bound is positive exactly on |mu - s| < positive_radius().
  double positive_radius() const noexcept { return positive_radius_; }

 private:
  double tail_mass(const Prior1D& prior, double a, double b, bool left) const;
  double prior_integral(const Prior1D& prior,
                        const std::function<double(double)>& f, double a,
                        double b) const;

  MeanProblem problem_;
  HoeffdingBoundPair bounds_;
  double positive_radius_;
};

/// Likelihood bound for the interval [s - Delta, s + Delta]. Throws
/// DomainError if Delta < delta.
double likelihood_bounds(const MeanProblem& problem, double Delta, double mu);

/// Conservative belief for an arbitrary interval: prior * lower bound inside
/// the interval against prior * upper bound outside it. Throws
/// DegeneratePosteriorError if both masses vanish.
double belief_for_interval(const MeanProblem& problem, const Prior1D& prior,
                           Interval interval);

/// Belief assigned to [s - Delta, s + Delta]. Requires Delta >= delta.
double belief(const MeanProblem& problem, const Prior1D& prior, double Delta);

struct MeanIntervalResult {
  Interval interval;  // [s - Delta, s + Delta] clipped to [0, 1]
  double belief;
  double half_width;  // Delta
};

/// Smallest Delta >= delta whose belief reaches p (bracket tolerance 1e-8).
/// Throws UnachievableError when no Delta reaches p.
MeanIntervalResult solve_halfwidth(const MeanProblem& problem,
                                   const Prior1D& prior, double p);

}  // namespace midground
