#pragma once

#include <algorithm>

namespace midground {

struct Interval {
  double lo;
  double hi;

  double width() const noexcept { return hi - lo; }
  bool contains(double x) const noexcept { return x >= lo && x <= hi; }
  Interval clipped(double a, double b) const noexcept {
    return {std::clamp(lo, a, b), std::clamp(hi, a, b)};
  }
};

/// An interval together with the belief the algorithm assigns to it.
struct IntervalResult {
  Interval interval;
  double belief;
};

}  // namespace midground
