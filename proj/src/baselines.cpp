#include "midground/baselines.hpp"

#include <algorithm>
#include <cmath>

#include "midground/errors.hpp"
#include "midground/numerics.hpp"

namespace midground {

namespace {

void check_confidence(double c) {
  if (!(c > 0.0 && c < 1.0)) {
    throw DomainError("confidence must lie in (0, 1)");
  }
}

}  // namespace

std::string_view to_string(FreqMethod method) noexcept {
  switch (method) {
    case FreqMethod::ClopperPearson:
      return "clopper-pearson";
    case FreqMethod::Hoeffding:
      return "hoeffding";
  }
  return "unknown";
}

FreqInterval clopper_pearson(int n, int s, double confidence) {
  check_confidence(confidence);
  if (n <= 0 || s < 0 || s > n) {
    throw DomainError("clopper_pearson: require n > 0 and 0 <= s <= n");
  }
  const double tail = 0.5 * (1.0 - confidence);
  const double lo = s == 0 ? 0.0 : beta_quantile(tail, s, n - s + 1.0);
  const double hi = s == n ? 1.0 : beta_quantile(1.0 - tail, s + 1.0, n - s);
  return {lo, hi, confidence, FreqMethod::ClopperPearson};
}

double hoeffding_halfwidth(int n, double confidence) {
  check_confidence(confidence);
  if (n <= 0) throw DomainError("hoeffding: n must be positive");
  return std::sqrt(std::log(2.0 / (1.0 - confidence)) / (2.0 * n));
}

FreqInterval hoeffding_interval(double sample_mean, int n, double confidence) {
  if (!(sample_mean >= 0.0 && sample_mean <= 1.0)) {
    throw DomainError("hoeffding: sample mean must lie in [0, 1]");
  }
  const double h = hoeffding_halfwidth(n, confidence);
  return {std::max(0.0, sample_mean - h), std::min(1.0, sample_mean + h),
          confidence, FreqMethod::Hoeffding};
}

}  // namespace midground
