#pragma once

#include <string_view>

namespace midground {

enum class FreqMethod { ClopperPearson, Hoeffding };

std::string_view to_string(FreqMethod method) noexcept;

/// Frequentist comparison interval, clipped to the parameter's support.
struct FreqInterval {
  double lo;
  double hi;
  double confidence;
  FreqMethod method;

  double width() const noexcept { return hi - lo; }
};

/// Two-sided equal-tailed exact binomial interval.
FreqInterval clopper_pearson(int n, int s, double confidence);

/// sqrt(ln(2 / (1 - c)) / (2n)).
double hoeffding_halfwidth(int n, double confidence);

/// [mean - h, mean + h] clipped to [0, 1].
FreqInterval hoeffding_interval(double sample_mean, int n, double confidence);

}  // namespace midground
