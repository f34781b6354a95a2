#pragma once

#include "midground/interval.hpp"
#include "midground/priors.hpp"

namespace midground {

/// Inputs for estimating theta = P(X < y) from N samples.
struct CdfProblem {
  int n_samples = 0;    // N
  int count_below = 0;  // s, samples strictly below the threshold
  double threshold = 0.0;

  /// Validates 0 <= count_below <= n_samples; throws DomainError.
  static CdfProblem make(int n_samples, int count_below, double threshold = 0.0);
  /// Counts samples strictly below `threshold`.
  static CdfProblem from_samples(const std::vector<double>& samples,
                                 double threshold);
};

/// Binomial likelihood (N choose s) theta^s (1-theta)^(N-s).
double binomial_likelihood(const CdfProblem& problem, double theta);
double log_binomial_likelihood(const CdfProblem& problem, double theta);

/// Posterior over theta from a prior and the binomial likelihood.
///
/// The likelihood is handled in log space, shifted by its maximum over the
/// prior support, and only integrated over the window where it exceeds
/// exp(-45) of that maximum. Throws DegeneratePosteriorError when the prior
/// carries no mass inside that window.
class CdfPosterior {
 public:
  CdfPosterior(const CdfProblem& problem, const Prior1D& prior);

  /// Posterior probability of [lo, hi].
  double mass(Interval interval) const;
  double cdf(double theta) const;
  double quantile(double q) const;

  Interval window() const noexcept { return window_; }

 private:
  double weight(double theta) const;
  double integral(double a, double b) const;

  CdfProblem problem_;
  Prior1D prior_;
  Interval window_;
  double peak_;  // likelihood maximizer within the prior support
  double normalizer_;
};

/// Reduced-Bayes belief of `interval`: posterior mass under prior x binomial.
double belief(const CdfProblem& problem, const Prior1D& prior,
              Interval interval);

/// Equal-tailed posterior interval [q_{(1-p)/2}, q_{(1+p)/2}].
IntervalResult smallest_interval(const CdfProblem& problem,
                                 const Prior1D& prior, double p);

/// Large-N half-width sqrt(2 s (1-s) / N) erf^{-1}(p) under a flat prior.
double asymptotic_halfwidth(double p, double s_frac, int n);

}  // namespace midground
