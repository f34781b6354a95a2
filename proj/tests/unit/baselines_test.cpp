#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "midground/baselines.hpp"
#include "midground/errors.hpp"
#include "midground/mean_interval.hpp"
#include "midground/numerics.hpp"

using namespace midground;

namespace {

// Beta quantile by plain bisection on the regularized incomplete beta.
double bisect_quantile(double q, double a, double b) {
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 100; ++i) {
    const double mid = 0.5 * (lo + hi);
    (reg_inc_beta(a, b, mid) < q ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST(ClopperPearson, BoundaryConventions) {
  EXPECT_EQ(clopper_pearson(20, 0, 0.95).lo, 0.0);
  EXPECT_EQ(clopper_pearson(20, 20, 0.95).hi, 1.0);
  EXPECT_NEAR(clopper_pearson(20, 0, 0.95).hi, 1 - std::pow(0.025, 1.0 / 20), 1e-12);
}

TEST(ClopperPearson, MatchesBisectionOracle) {
  const FreqInterval ci = clopper_pearson(50, 20, 0.95);
  EXPECT_NEAR(ci.lo, bisect_quantile(0.025, 20, 31), 1e-12);
  EXPECT_NEAR(ci.hi, bisect_quantile(0.975, 21, 30), 1e-12);
  EXPECT_NEAR(ci.lo, 0.2640783950945368, 1e-10);
  EXPECT_NEAR(ci.hi, 0.5482059715208196, 1e-10);
  EXPECT_EQ(ci.method, FreqMethod::ClopperPearson);
  EXPECT_EQ(to_string(ci.method), "clopper-pearson");
}

TEST(ClopperPearson, InvalidCounts) {
  EXPECT_THROW(clopper_pearson(0, 0, 0.95), DomainError);
  EXPECT_THROW(clopper_pearson(10, 11, 0.95), DomainError);
  EXPECT_THROW(clopper_pearson(10, 5, 1.0), DomainError);
}

TEST(ClopperPearson, CoverageAtLeastNominal) {
  std::mt19937_64 gen(21);
  const int reps = 4000;
  for (int n : {10, 50}) {
    for (double theta : {0.1, 0.5}) {
      std::binomial_distribution<int> draw(n, theta);
      int hits = 0;
      for (int r = 0; r < reps; ++r) {
        const FreqInterval ci = clopper_pearson(n, draw(gen), 0.9);
        hits += ci.lo <= theta && theta <= ci.hi;
      }
      EXPECT_GE(hits / double(reps), 0.9 - 2 * std::sqrt(0.09 / reps)) << n << ' ' << theta;
    }
  }
}

TEST(Hoeffding, HalfwidthFormula) {
  EXPECT_NEAR(hoeffding_halfwidth(50, 0.95), 0.19206455826398416, 1e-15);
  EXPECT_NEAR(hoeffding_halfwidth(50, 0.9) / hoeffding_halfwidth(200, 0.9), 2.0, 1e-14);
  EXPECT_NEAR(hoeffding_halfwidth(30, 1e-12), std::sqrt(std::log(2.0) / 60), 1e-10);
}

TEST(Hoeffding, ClippedInterval) {
  const FreqInterval h = hoeffding_interval(0.05, 50, 0.95);
  EXPECT_EQ(h.lo, 0.0);
  EXPECT_NEAR(h.hi, 0.05 + 0.19206455826398416, 1e-15);
  EXPECT_THROW(hoeffding_interval(1.2, 50, 0.95), DomainError);
}

TEST(Hoeffding, CoverageForBetaData) {
  std::mt19937_64 gen(4);
  std::gamma_distribution<double> ga(2.0, 1.0), gb(5.0, 1.0);
  const int n = 30, reps = 3000;
  int hits = 0;
  for (int r = 0; r < reps; ++r) {
    double sum = 0;
    for (int i = 0; i < n; ++i) {
      const double x = ga(gen), y = gb(gen);
      sum += x / (x + y);
    }
    const FreqInterval h = hoeffding_interval(sum / n, n, 0.8);
    hits += h.lo <= 2.0 / 7 && 2.0 / 7 <= h.hi;
  }
  EXPECT_GE(hits / double(reps), 0.8);
}

TEST(Hoeffding, BayesianGapFactorsReconstruct) {
  // Hoeffding over the maximum-variance normal half-width, times the
  // asymptotic mean-interval excess over Hoeffding.
  auto factor = [](double p) {
    const double gap = std::sqrt(2 * std::log(2 / (1 - p))) / normal_quantile(0.5 + p / 2);
    return gap * asymptotic_halfwidth_mean(p, 1) / hoeffding_halfwidth(1, p);
  };
  EXPECT_NEAR(std::sqrt(2 * std::log(40.0)) / normal_quantile(0.975), 1.3859, 1e-4);
  EXPECT_NEAR(factor(0.95), 2.062, 1e-3);
  EXPECT_NEAR(factor(0.99), 1.780, 1e-3);
}
