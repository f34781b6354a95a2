#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "midground/baselines.hpp"
#include "midground/cdf_interval.hpp"
#include "midground/errors.hpp"

using namespace midground;

TEST(BinomialLikelihood, SmallCases) {
  EXPECT_DOUBLE_EQ(binomial_likelihood(CdfProblem::make(1, 0), 0.0), 1.0);
  EXPECT_DOUBLE_EQ(binomial_likelihood(CdfProblem::make(2, 1), 0.5), 0.5);
  EXPECT_EQ(binomial_likelihood(CdfProblem::make(3, 1), 0.0), 0.0);
}

TEST(BinomialLikelihood, MatchesLogGammaOracle) {
  const double log_choose = std::lgamma(51.0) - std::lgamma(21.0) - std::lgamma(31.0);
  const double oracle = std::exp(log_choose + 20 * std::log(0.4) + 30 * std::log(0.6));
  EXPECT_NEAR(binomial_likelihood(CdfProblem::make(50, 20), 0.4), oracle, 1e-13);
  EXPECT_NEAR(oracle, 0.11455855282952408, 1e-13);
}

TEST(BinomialLikelihood, LargeNStaysFinite) {
  const CdfProblem big = CdfProblem::make(1'000'000, 400'000);
  EXPECT_TRUE(std::isfinite(log_binomial_likelihood(big, 0.4)));
  EXPECT_GT(binomial_likelihood(big, 0.4), 0.0);
}

TEST(CdfProblem, CountsStrictlyBelow) {
  const CdfProblem p = CdfProblem::from_samples({0.1, 0.5, 0.5, 0.7, 0.2}, 0.5);
  EXPECT_EQ(p.n_samples, 5);
  EXPECT_EQ(p.count_below, 2);
  EXPECT_THROW(CdfProblem::make(3, 4), DomainError);
  EXPECT_THROW(CdfProblem::make(3, -1), DomainError);
}

TEST(CdfBelief, WholeSupportIsOne) {
  for (int s : {0, 7, 30}) {
    EXPECT_NEAR(belief(CdfProblem::make(30, s), Prior1D::beta(2, 3), {0, 1}), 1.0, 1e-12);
  }
}

TEST(CdfBelief, ZeroWidthIsZero) {
  EXPECT_EQ(belief(CdfProblem::make(50, 20), Prior1D::uniform(), {0.9, 0.9}), 0.0);
}

TEST(CdfBelief, UniformPriorClosedForm) {
  const double got = belief(CdfProblem::make(50, 20), Prior1D::uniform(), {0.3, 0.5});
  EXPECT_NEAR(got, reg_inc_beta(21, 31, 0.5) - reg_inc_beta(21, 31, 0.3), 1e-10);
  EXPECT_NEAR(got, 0.8607347347334872, 1e-10);
}

TEST(CdfBelief, UniformPriorClosedFormSampled) {
  std::mt19937 gen(11);
  const Prior1D u = Prior1D::uniform();
  for (int i = 0; i < 200; ++i) {
    const int n = std::uniform_int_distribution<int>(1, 60)(gen);
    const int s = std::uniform_int_distribution<int>(0, n)(gen);
    double a = std::uniform_real_distribution<double>(0, 1)(gen);
    double b = std::uniform_real_distribution<double>(0, 1)(gen);
    if (a > b) std::swap(a, b);
    const double oracle =
        reg_inc_beta(s + 1.0, n - s + 1.0, b) - reg_inc_beta(s + 1.0, n - s + 1.0, a);
    ASSERT_NEAR(belief(CdfProblem::make(n, s), u, {a, b}), oracle, 1e-8)
        << n << ' ' << s << ' ' << a << ' ' << b;
  }
}

TEST(CdfBelief, MonotoneUnderNesting) {
  const CdfProblem problem = CdfProblem::make(40, 13);
  const Prior1D prior = Prior1D::truncated_normal(0.5, 0.2);
  double prev = 0.0;
  for (int k = 0; k <= 50; ++k) {
    const double w = k / 100.0;
    const double a = belief(problem, prior, {0.3 - w, 0.35 + w});
    ASSERT_GE(a, prev - 1e-12);
    prev = a;
  }
}

TEST(CdfBelief, DisjointPriorIsDegenerate) {
  // Likelihood mass sits at 0, where the grid prior vanishes.
  const Prior1D prior = Prior1D::grid(Grid1D(0, 1, {0, 0, 0, 1}));
  EXPECT_THROW(belief(CdfProblem::make(5000, 0), prior, {0, 0.01}), DegeneratePosteriorError);
}

TEST(SmallestInterval, UniformPriorIsBetaEqualTails) {
  const IntervalResult r = smallest_interval(CdfProblem::make(50, 20), Prior1D::uniform(), 0.95);
  EXPECT_NEAR(r.interval.lo, 0.27584296051258517, 1e-9);
  EXPECT_NEAR(r.interval.hi, 0.5388590104201924, 1e-9);
  EXPECT_NEAR(r.belief, 0.95, 1e-6);
}

TEST(SmallestInterval, BeliefEqualsTarget) {
  const Prior1D prior = Prior1D::beta(3, 2);
  for (double p : {0.1, 0.5, 0.9, 0.999}) {
    const CdfProblem problem = CdfProblem::make(25, 6);
    const IntervalResult r = smallest_interval(problem, prior, p);
    EXPECT_NEAR(belief(problem, prior, r.interval), p, 1e-6);
  }
}

TEST(SmallestInterval, AllBelowReachesOne) {
  const IntervalResult r = smallest_interval(CdfProblem::make(30, 30), Prior1D::uniform(), 0.99);
  EXPECT_NEAR(r.interval.hi, 1.0, 1e-3);
}

TEST(SmallestInterval, NoDataGivesPriorQuantiles) {
  const IntervalResult r = smallest_interval(CdfProblem::make(0, 0), Prior1D::uniform(), 0.5);
  EXPECT_NEAR(r.interval.lo, 0.25, 1e-9);
  EXPECT_NEAR(r.interval.hi, 0.75, 1e-9);
}

TEST(SmallestInterval, ApproachesFullSupport) {
  const IntervalResult r =
      smallest_interval(CdfProblem::make(0, 0), Prior1D::uniform(), 1 - 1e-9);
  EXPECT_LT(r.interval.lo, 1e-8);
  EXPECT_GT(r.interval.hi, 1 - 1e-8);
}

TEST(SmallestInterval, RejectsBadLevel) {
  EXPECT_THROW(smallest_interval(CdfProblem::make(5, 2), Prior1D::uniform(), 1.0), DomainError);
  EXPECT_THROW(smallest_interval(CdfProblem::make(5, 2), Prior1D::uniform(), 0.0), DomainError);
}

TEST(AsymptoticHalfwidth, Formula) {
  EXPECT_NEAR(asymptotic_halfwidth(0.95, 0.5, 10000), 0.009799819922700268, 1e-15);
  EXPECT_NEAR(asymptotic_halfwidth(0.95, 0.5, 100) / asymptotic_halfwidth(0.95, 0.5, 200),
              std::sqrt(2.0), 1e-12);
  for (double s : {0.1, 0.3, 0.45, 0.55, 0.9}) {
    EXPECT_LT(asymptotic_halfwidth(0.9, s, 500), asymptotic_halfwidth(0.9, 0.5, 500));
  }
  EXPECT_THROW(asymptotic_halfwidth(0.95, 0.0, 10), DomainError);
  EXPECT_THROW(asymptotic_halfwidth(0.95, 1.0, 10), DomainError);
}

TEST(SmallestInterval, LargeNMatchesAsymptote) {
  const int n = 1'000'000;
  const IntervalResult r =
      smallest_interval(CdfProblem::make(n, 400'000), Prior1D::uniform(), 0.95);
  const double half = 0.5 * r.interval.width();
  EXPECT_NEAR(half / asymptotic_halfwidth(0.95, 0.4, n), 1.0, 0.01);
  EXPECT_NEAR(half / (0.5 * clopper_pearson(n, 400'000, 0.95).width()), 1.0, 0.02);
}

TEST(SmallestInterval, FrequentistCoverageLargeN) {
  std::mt19937_64 gen(5);
  const int n = 2000, reps = 1000;
  for (double theta : {0.1, 0.4, 0.5}) {
    std::binomial_distribution<int> draw(n, theta);
    int hits = 0;
    for (int r = 0; r < reps; ++r) {
      const IntervalResult res =
          smallest_interval(CdfProblem::make(n, draw(gen)), Prior1D::uniform(), 0.9);
      hits += res.interval.contains(theta);
    }
    const double cover = static_cast<double>(hits) / reps;
    EXPECT_NEAR(cover, 0.9, 4 * std::sqrt(0.09 / reps)) << theta;
  }
}
