#pragma once

#include <span>

#include "midground/cdf_interval.hpp"
#include "midground/interval.hpp"
#include "midground/mean_interval.hpp"
#include "midground/numerics.hpp"
#include "midground/priors.hpp"

namespace midground {

/// Tabulated likelihood of one dataset, as a pair of bounds on a common grid:
/// `lower` is used inside the queried interval, `upper` outside it. For the
/// CDF case both bounds coincide with the (peak-scaled) binomial likelihood.
///
/// Independent datasets combine by multiplying their likelihoods node-wise;
/// products of bounds stay bounds of the joint likelihood.
struct LikelihoodEnvelope {
  Grid1D lower;
  Grid1D upper;
};

LikelihoodEnvelope tabulate_likelihood(const CdfProblem& problem, double lo,
                                       double hi, std::size_t nodes);
LikelihoodEnvelope tabulate_likelihood(const MeanProblem& problem, double lo,
                                       double hi, std::size_t nodes);

/// Node-wise product. All envelopes must share one grid layout.
LikelihoodEnvelope multiply_likelihoods(
    std::span<const LikelihoodEnvelope> envelopes);

/// Reduced-Bayes belief of `interval` under a tabulated envelope:
/// int_I prior * lower / (int_I prior * lower + int_{not I} prior * upper).
double envelope_belief(const LikelihoodEnvelope& envelope,
                       const Prior1D& prior, Interval interval);

}  // namespace midground
