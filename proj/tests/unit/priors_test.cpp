#include <gtest/gtest.h>

#include <cmath>

#include "midground/errors.hpp"
#include "midground/priors.hpp"

using namespace midground;

namespace {

double quad_mass(const Prior1D& p) {
  QuadratureOptions opts;
  opts.abs_tol = 1e-13;
  const std::vector<double> kinks = p.kinks(p.lo(), p.hi());
  return integrate([&](double t) { return p.density(t); }, p.lo(), p.hi(), kinks,
                   opts);
}

}  // namespace

TEST(Prior, UniformDensity) {
  const Prior1D u = Prior1D::uniform();
  EXPECT_DOUBLE_EQ(density_at(u, 0.37), 1.0);
  EXPECT_EQ(density_at(u, -0.1), 0.0);
  EXPECT_EQ(density_at(u, 1.1), 0.0);
  EXPECT_DOUBLE_EQ(density_at(Prior1D::uniform(0.2, 0.7), 0.5), 2.0);
}

TEST(Prior, BetaDensityFormula) {
  EXPECT_NEAR(density_at(Prior1D::beta(2, 2), 0.5), 1.5, 1e-14);
  // a x^(a-1) (1-x)^(b-1) / B(a, b) with B(3, 5) = 2! 4! / 7! = 1/105.
  EXPECT_NEAR(density_at(Prior1D::beta(3, 5), 0.2), 105 * 0.04 * std::pow(0.8, 4),
              1e-12);
}

TEST(Prior, EveryConstructorHasUnitMass) {
  const std::vector<Prior1D> priors = {
      Prior1D::uniform(), Prior1D::uniform(0.3, 0.7), Prior1D::beta(1, 1),
      Prior1D::beta(2, 5), Prior1D::beta(30, 12),
      Prior1D::truncated_normal(0.5, 0.1), Prior1D::truncated_normal(0.1, 0.3),
      Prior1D::truncated_normal(0.5, 0.1, 0.3, 0.7),
      Prior1D::grid(Grid1D(0, 1, {0, 1, 2, 3, 2, 1, 0}))};
  for (const Prior1D& p : priors) {
    EXPECT_NEAR(quad_mass(p), 1.0, 1e-8);
    EXPECT_NEAR(p.mass(), 1.0, 1e-8);
    for (int i = 0; i <= 100; ++i) EXPECT_GE(p.density(i / 100.0), 0.0);
  }
}

TEST(Normalize, ConstantGrid) {
  const Prior1D g = normalize(Prior1D::raw_grid(Grid1D(0, 1, {2, 2, 2, 2})));
  const auto& values = std::get<GridFamily>(g.family()).density.values();
  for (double v : values) EXPECT_NEAR(v, 1.0, 1e-15);
}

TEST(Normalize, ParametricUnchanged) {
  const Prior1D b = Prior1D::beta(2, 2);
  const Prior1D n = normalize(b);
  for (double t : {0.1, 0.5, 0.9}) EXPECT_EQ(n.density(t), b.density(t));
}

TEST(Normalize, TriangleAgainstTrapezoid) {
  const std::vector<double> raw = {0, 1, 2, 3, 4, 3, 2, 1, 0};
  // Trapezoid over 8 cells of width 1/8: (1+2+3+4+3+2+1) / 8 = 2.
  const Prior1D g = normalize(Prior1D::raw_grid(Grid1D(0, 1, raw)));
  const auto& values = std::get<GridFamily>(g.family()).density.values();
  for (std::size_t i = 0; i < raw.size(); ++i) EXPECT_NEAR(values[i], raw[i] / 2.0, 1e-14);
  EXPECT_NEAR(quad_mass(g), 1.0, 1e-12);
}

TEST(Normalize, Idempotent) {
  const Prior1D once = normalize(Prior1D::raw_grid(Grid1D(0.1, 0.9, {3, 1, 4, 1, 5, 9, 2, 6})));
  const Prior1D twice = normalize(once);
  const auto& a = std::get<GridFamily>(once.family()).density.values();
  const auto& b = std::get<GridFamily>(twice.family()).density.values();
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-12);
}

TEST(Normalize, ZeroMassThrows) {
  EXPECT_THROW(normalize(Prior1D::raw_grid(Grid1D(0, 1, {0, 0, 0}))), DomainError);
}

TEST(Prior, InvalidParameters) {
  EXPECT_THROW(Prior1D::uniform(0.5, 0.5), DomainError);
  EXPECT_THROW(Prior1D::uniform(-0.1, 1), DomainError);
  EXPECT_THROW(Prior1D::beta(0.5, 2), DomainError);
  EXPECT_THROW(Prior1D::truncated_normal(0.5, 0.0), DomainError);
  EXPECT_THROW(Prior1D::raw_grid(Grid1D(0, 1, {1, -1, 1})), DomainError);
}

TEST(Prior, JsonRoundTrip) {
  const char* specs[] = {
      R"({"family":"uniform"})",
      R"({"family":"beta","alpha":2,"beta":2})",
      R"({"family":"truncnormal","mean":0.5,"sd":0.1,"lo":0,"hi":1})",
      R"({"family":"grid","lo":0,"hi":1,"values":[1,2,3]})"};
  for (const char* s : specs) {
    const Prior1D p = Prior1D::from_json(nlohmann::json::parse(s));
    const Prior1D q = Prior1D::from_json(nlohmann::json::parse(p.to_json().dump()));
    for (double t : {0.0, 0.25, 0.5, 0.8, 1.0}) EXPECT_DOUBLE_EQ(p.density(t), q.density(t)) << s;
  }
}

TEST(Prior, JsonRejectsMalformed) {
  for (const char* s : {R"({"family":"cauchy"})", R"({"alpha":2})",
                        R"({"family":"beta","alpha":"x","beta":2})",
                        R"({"family":"grid","lo":0,"hi":1})", R"([1,2])"}) {
    EXPECT_THROW(Prior1D::from_json(nlohmann::json::parse(s)), Error) << s;
  }
}

TEST(Prior, ModeAndKinks) {
  EXPECT_NEAR(Prior1D::beta(2, 5).mode(), 0.2, 1e-6);
  EXPECT_NEAR(Prior1D::truncated_normal(0.5, 0.1, 0.3, 0.7).mode(), 0.5, 1e-6);
  const Prior1D g = Prior1D::grid(Grid1D(0, 1, {1, 1, 1, 1, 1}));
  EXPECT_EQ(g.kinks(0.3, 0.8), (std::vector<double>{0.5, 0.75}));
  EXPECT_TRUE(Prior1D::uniform().kinks(0, 1).empty());
}
