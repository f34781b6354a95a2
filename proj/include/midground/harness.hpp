#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "midground/interval.hpp"
#include "midground/priors.hpp"
#include "midground/random.hpp"

namespace midground {

enum class Case { Cdf, Mean };

std::string_view to_string(Case c) noexcept;
/// Accepts "cdf" or "mean"; throws DomainError otherwise.
Case parse_case(std::string_view name);

/// Hierarchical prior over data-generating distributions:
/// X ~ N(mu, sigma^2), mu ~ N(0.5, 0.1^2), sigma in {0.1, 0.2} with equal
/// weight. For the mean case mu is truncated to [0.3, 0.7] and X to
/// [mu - 0.3, mu + 0.3], which keeps every distribution inside [0, 1].
struct DistributionPrior {
  double mu_mean = 0.5;
  double mu_sd = 0.1;
  std::array<double, 2> sigmas = {0.1, 0.2};
  double mu_lo = 0.3;
  double mu_hi = 0.7;
  double x_halfwidth = 0.3;
  double threshold = 0.5;  // y for the CDF case
};

struct Truth {
  double mu;
  double sigma;
  double theta;  // P(X < y) or E[X]
};

/// theta for given (mu, sigma): Phi((y - mu) / sigma) for the CDF case (no
/// truncation), the mean of the truncated normal for the mean case.
double truth_theta(const DistributionPrior& dp, Case c, double mu,
                   double sigma);

Truth sample_truth(const DistributionPrior& dp, Case c, Rng& rng);

std::vector<double> simulate_data(const DistributionPrior& dp, Case c,
                                  const Truth& truth, int n, Rng& rng);

/// Push-forward of the distribution prior through the map to theta,
/// histogrammed onto `nodes` grid nodes from `draws` prior samples and
/// normalized. The grid spans [0, 1] for the CDF case and the mu truncation
/// range for the mean case.
Prior1D induced_theta_prior(const DistributionPrior& dp, Case c,
                            std::uint64_t seed,
                            std::size_t draws = 1'000'000,
                            std::size_t nodes = 512);

// ---------------------------------------------------------------------------
// Validity sweep (ABC rejection sampling)

/// One interval/level pair whose conditional coverage is estimated.
/// CDF case: the fixed `interval`. Mean case: the interval
/// [s - half_width, s + half_width] around each draw's statistic, with
/// randomization width `delta`.
struct ValidityCandidate {
  double p;
  Interval interval{0.0, 0.0};
  double half_width = 0.0;
  double delta = 0.0;
};

/// Builds candidates whose nominal level is exactly the belief reached at the
/// modal statistic of the prior predictive. CDF intervals are centred on
/// that statistic's theta; mean half-widths are solved at the prior mode.
std::vector<ValidityCandidate> sweep_candidates(
    Case c, const Prior1D& theta_prior, int n_data,
    std::span<const double> levels);

std::vector<double> default_levels(Case c);

struct AbcSettings {
  double epsilon = 0.02;
  std::size_t accepted_target = 2000;
  std::size_t max_attempts = 10'000'000;  // starvation check point
  double starvation_floor = 1e-4;
  std::size_t batch_size = 256;
  unsigned threads = 0;  // 0: hardware concurrency
};

struct ValidityPoint {
  double target_p;
  std::size_t accepted_count;
  std::size_t attempts;
  double b_hat;      // fraction of accepted draws with theta inside
  double std_error;  // binomial standard error of b_hat
};

/// |b_hat - p| <= max(2 se, epsilon).
bool holds_with_equality(const ValidityPoint& point, double epsilon) noexcept;
/// b_hat >= p - 2 se.
bool holds_as_lower_bound(const ValidityPoint& point) noexcept;

/// Estimates b(theta in I | A(I) = p) for every candidate: draw a truth,
/// simulate `n_data` observations, run the interval algorithm with
/// `theta_prior`, and keep the draw when |A - p| <= epsilon, until
/// `accepted_target` draws are kept. Draws come from per-batch streams
/// derived from `seed`; results do not depend on the thread count.
std::vector<ValidityPoint> abc_validity_curve(
    Case c, const DistributionPrior& dp, const Prior1D& theta_prior,
    std::span<const ValidityCandidate> candidates, int n_data,
    const AbcSettings& settings, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Width versus sample size

struct WidthRow {
  int n;
  double width_proposed;
  double width_baseline;
  double ratio;
};

/// Interval widths at each n, against Clopper-Pearson (CDF, s = round(0.4 n))
/// or Hoeffding (mean, statistic and sample mean pinned at 0.4). Widths are
/// measured after clipping to [0, 1].
std::vector<WidthRow> width_vs_n(Case c, double p, std::span<const int> n_list,
                                 const Prior1D& prior);

void write_validity_csv(std::ostream& out, Case c,
                        std::span<const ValidityPoint> points);
void write_width_csv(std::ostream& out, Case c, std::span<const WidthRow> rows);

}  // namespace midground
