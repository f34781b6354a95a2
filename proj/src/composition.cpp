#include "midground/composition.hpp"

#include <cmath>

#include "midground/errors.hpp"

namespace midground {

namespace {

double integrate_against_prior(const Grid1D& grid, const Prior1D& prior,
                               double a, double b) {
  a = std::max({a, grid.lo(), prior.lo()});
  b = std::min({b, grid.hi(), prior.hi()});
  if (!(a < b)) return 0.0;
  std::vector<double> points = prior.kinks(a, b);
  const double h = grid.spacing();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid.lo() + h * static_cast<double>(i);
    if (x > a && x < b) points.push_back(x);
  }
  QuadratureOptions opts;
  opts.abs_tol = 1e-300;
  opts.rel_tol = 1e-11;
  return integrate(
      [&](double t) { return prior.density(t) * grid.interpolate(t); }, a, b,
      points, opts);
}

}  // namespace

LikelihoodEnvelope tabulate_likelihood(const CdfProblem& problem, double lo,
                                       double hi, std::size_t nodes) {
  const double n = problem.n_samples;
  const double peak = n == 0 ? 0.0
                             : log_binomial_likelihood(
                                   problem, problem.count_below / n);
  Grid1D grid = Grid1D::tabulate(lo, hi, nodes, [&](double theta) {
    return std::exp(log_binomial_likelihood(problem, theta) - peak);
  });
  return {grid, grid};
}

LikelihoodEnvelope tabulate_likelihood(const MeanProblem& problem, double lo,
                                       double hi, std::size_t nodes) {
  const MeanLikelihood likelihood(problem);
  return {Grid1D::tabulate(lo, hi, nodes,
                           [&](double mu) { return likelihood.lower(mu); }),
          Grid1D::tabulate(lo, hi, nodes,
                           [&](double mu) { return likelihood.upper(mu); })};
}

LikelihoodEnvelope multiply_likelihoods(
    std::span<const LikelihoodEnvelope> envelopes) {
  if (envelopes.empty()) {
    throw DomainError("multiply_likelihoods: need at least one likelihood");
  }
  const Grid1D& layout = envelopes.front().lower;
  std::vector<double> lower(layout.size(), 1.0);
  std::vector<double> upper(layout.size(), 1.0);
  for (const LikelihoodEnvelope& e : envelopes) {
    if (!e.lower.same_layout(layout) || !e.upper.same_layout(layout)) {
      throw DomainError("multiply_likelihoods: grids differ in layout");
    }
    for (std::size_t i = 0; i < layout.size(); ++i) {
      lower[i] *= e.lower.values()[i];
      upper[i] *= e.upper.values()[i];
    }
  }
  return {Grid1D(layout.lo(), layout.hi(), std::move(lower)),
          Grid1D(layout.lo(), layout.hi(), std::move(upper))};
}

double envelope_belief(const LikelihoodEnvelope& envelope,
                       const Prior1D& prior, Interval interval) {
  if (interval.lo > interval.hi) {
    throw DomainError("belief: interval requires lo <= hi");
  }
  const double inside =
      integrate_against_prior(envelope.lower, prior, interval.lo, interval.hi);
  const double outside =
      integrate_against_prior(envelope.upper, prior, envelope.upper.lo(),
                              interval.lo) +
      integrate_against_prior(envelope.upper, prior, interval.hi,
                              envelope.upper.hi());
  if (!(inside + outside > 0.0)) {
    throw DegeneratePosteriorError(
        "prior places no mass where the tabulated likelihood is positive");
  }
  return inside / (inside + outside);
}

}  // namespace midground
