#include "midground/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <string>

#include "midground/errors.hpp"

namespace midground {

// ---------------------------------------------------------------------------
// Grid1D

Grid1D::Grid1D(double lo, double hi, std::vector<double> values)
    : lo_(lo), hi_(hi), values_(std::move(values)) {
  if (!(std::isfinite(lo_) && std::isfinite(hi_) && lo_ < hi_)) {
    throw DomainError("Grid1D: require finite lo < hi");
  }
  if (values_.size() < 2) {
    throw DomainError("Grid1D: need at least two nodes");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw DomainError("Grid1D: non-finite node value");
  }
}

Grid1D Grid1D::tabulate(double lo, double hi, std::size_t n,
                        const std::function<double(double)>& f) {
  if (n < 2) throw DomainError("Grid1D: need at least two nodes");
  std::vector<double> values(n);
  const double h = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = (i + 1 == n) ? hi : lo + h * static_cast<double>(i);
    values[i] = f(x);
  }
  return Grid1D(lo, hi, std::move(values));
}

double Grid1D::node(std::size_t i) const noexcept {
  if (i + 1 == values_.size()) return hi_;
  return lo_ + spacing() * static_cast<double>(i);
}

double Grid1D::interpolate(double x) const noexcept {
  if (!(x >= lo_ && x <= hi_)) return 0.0;
  const double t = (x - lo_) / spacing();
  const std::size_t last = values_.size() - 2;
  const std::size_t i = std::min(static_cast<std::size_t>(t), last);
  const double frac = t - static_cast<double>(i);
  return values_[i] * (1.0 - frac) + values_[i + 1] * frac;
}

double Grid1D::trapezoid() const noexcept {
  double sum = 0.5 * (values_.front() + values_.back());
  for (std::size_t i = 1; i + 1 < values_.size(); ++i) sum += values_[i];
  return sum * spacing();
}

bool Grid1D::same_layout(const Grid1D& other) const noexcept {
  return lo_ == other.lo_ && hi_ == other.hi_ &&
         values_.size() == other.values_.size();
}

// ---------------------------------------------------------------------------
// Error function family

double erf(double x) noexcept { return std::erf(x); }
double erfc(double x) noexcept { return std::erfc(x); }

namespace {

// Acklam's rational approximation to the normal quantile (relative error
// about 1e-9); used only as a starting point for Halley refinement.
double acklam_quantile(double u) {
  static constexpr std::array<double, 6> a = {
      -3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
      1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr std::array<double, 5> b = {
      -5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
      6.680131188771972e+01, -1.328068155288572e+01};
  static constexpr std::array<double, 6> c = {
      -7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
      -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr std::array<double, 4> d = {
      7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
      3.754408661907416e+00};
  constexpr double kLow = 0.02425;

  auto tail = [&](double q) {
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
            c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  };
  if (u < kLow) return tail(std::sqrt(-2.0 * std::log(u)));
  if (u > 1.0 - kLow) return -tail(std::sqrt(-2.0 * std::log1p(-u)));
  const double q = u - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r +
          a[5]) *
         q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

constexpr double kTwoOverSqrtPi = 2.0 / 1.7724538509055160273;

// Halley iteration for g(x) = target with g' = sign * 2/sqrt(pi) exp(-x^2).
template <class G>
double halley_refine(G&& g, double target, double sign, double x) {
  for (int it = 0; it < 8; ++it) {
    const double f = g(x) - target;
    const double fp = sign * kTwoOverSqrtPi * std::exp(-x * x);
    if (fp == 0.0) break;
    const double step = f / (fp + x * f);
    x -= step;
    if (std::abs(step) <= 1e-16 * std::abs(x)) break;
  }
  return x;
}

}  // namespace

double erfc_inv(double q) {
  if (!(q > 0.0 && q < 2.0)) {
    throw DomainError("erfc_inv: argument must lie in (0, 2), got " +
                      std::to_string(q));
  }
  if (q == 1.0) return 0.0;
  if (q > 1.0) return -erfc_inv(2.0 - q);
  if (q > 0.5) return erf_inv(1.0 - q);
  const double x0 = -acklam_quantile(0.5 * q) / std::numbers::sqrt2;
  return halley_refine([](double x) { return std::erfc(x); }, q, -1.0, x0);
}

double erf_inv(double p) {
  if (!(p > -1.0 && p < 1.0)) {
    throw DomainError("erf_inv: argument must lie in (-1, 1), got " +
                      std::to_string(p));
  }
  if (p == 0.0) return 0.0;
  if (std::abs(p) > 0.5) {
    const double x = erfc_inv(1.0 - std::abs(p));
    return p < 0.0 ? -x : x;
  }
  const double x0 = acklam_quantile(0.5 * (1.0 + p)) / std::numbers::sqrt2;
  return halley_refine([](double x) { return std::erf(x); }, p, 1.0, x0);
}

double normal_cdf(double x) noexcept {
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double normal_quantile(double u) {
  if (!(u > 0.0 && u < 1.0)) {
    throw DomainError("normal_quantile: argument must lie in (0, 1)");
  }
  return -std::numbers::sqrt2 * erfc_inv(2.0 * u);
}

// ---------------------------------------------------------------------------
// Incomplete beta

namespace {

double lgamma_pos(double x) noexcept {
#if defined(__GLIBC__)
  int sign = 0;
  return ::lgamma_r(x, &sign);
#else
  return std::lgamma(x);
#endif
}

// Modified Lentz evaluation of the continued fraction for I_x(a, b).
double beta_continued_fraction(double a, double b, double x) {
  constexpr double kTiny = 1e-300;
  constexpr double kEps = 1e-16;
  constexpr int kMaxIter = 200000;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) return h;
  }
  throw ConvergenceError("reg_inc_beta: continued fraction did not converge");
}

}  // namespace

double log_gamma(double x) noexcept { return lgamma_pos(x); }

double log_beta(double a, double b) noexcept {
  return lgamma_pos(a) + lgamma_pos(b) - lgamma_pos(a + b);
}

double reg_inc_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw DomainError("reg_inc_beta: require a > 0 and b > 0");
  }
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError("reg_inc_beta: x must lie in [0, 1]");
  }
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double log_front =
      a * std::log(x) + b * std::log1p(-x) - log_beta(a, b);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return std::clamp(front * beta_continued_fraction(a, b, x) / a, 0.0, 1.0);
  }
  return std::clamp(1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b,
                    0.0, 1.0);
}

double beta_quantile(double q, double a, double b) {
  if (!(q >= 0.0 && q <= 1.0)) {
    throw DomainError("beta_quantile: probability must lie in [0, 1]");
  }
  if (q == 0.0) return 0.0;
  if (q == 1.0) return 1.0;
  return find_root([&](double x) { return reg_inc_beta(a, b, x) - q; }, 0.0,
                   1.0, 1e-15);
}

// ---------------------------------------------------------------------------
// Quadrature

namespace {

// QUADPACK qk15 nodes and weights.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

Segment gauss_kronrod(const std::function<double(double)>& f, double a,
                      double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double sum = f(center - dx) + f(center + dx);
    kronrod += kWgk[j] * sum;
    if (j % 2 == 1) gauss += kWg[j / 2] * sum;
  }
  kronrod *= half;
  gauss *= half;
  if (!std::isfinite(kronrod)) {
    throw ConvergenceError("integrate: integrand is not finite");
  }
  return {a, b, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace

double integrate(const std::function<double(double)>& f, double lo, double hi,
                 double tol) {
  QuadratureOptions options;
  options.abs_tol = tol;
  return integrate(f, lo, hi, options);
}

double integrate(const std::function<double(double)>& f, double lo, double hi,
                 const QuadratureOptions& options) {
  return integrate(f, lo, hi, std::span<const double>{}, options);
}

double integrate(const std::function<double(double)>& f, double lo, double hi,
                 std::span<const double> points,
                 const QuadratureOptions& options) {
  if (!(std::isfinite(lo) && std::isfinite(hi))) {
    throw DomainError("integrate: bounds must be finite");
  }
  if (lo > hi) throw DomainError("integrate: require lo <= hi");
  if (!(options.abs_tol > 0.0 || options.rel_tol > 0.0)) {
    throw DomainError("integrate: tolerance must be positive");
  }
  if (lo == hi) return 0.0;

  std::vector<double> cuts{lo};
  for (double p : points) {
    if (p > lo && p < hi) cuts.push_back(p);
  }
  cuts.push_back(hi);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::priority_queue<Segment> queue;
  double total = 0.0;
  double error = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    Segment s = gauss_kronrod(f, cuts[i], cuts[i + 1]);
    total += s.value;
    error += s.error;
    queue.push(s);
  }

  std::size_t since_resum = 0;
  while (error > std::max(options.abs_tol, options.rel_tol * std::abs(total))) {
    if (queue.size() >= options.max_segments) {
      throw ConvergenceError("integrate: subdivision budget exhausted");
    }
    const Segment worst = queue.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b) ||
        (worst.b - worst.a) <
            64.0 * std::numeric_limits<double>::epsilon() *
                std::max(std::abs(worst.a), std::abs(worst.b))) {
      throw ConvergenceError("integrate: round-off limit reached");
    }
    queue.pop();
    const Segment left = gauss_kronrod(f, worst.a, mid);
    const Segment right = gauss_kronrod(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
    if (++since_resum == 64) {
      // Re-sum to stop drift in the running totals.
      since_resum = 0;
      auto copy = queue;
      total = 0.0;
      error = 0.0;
      while (!copy.empty()) {
        total += copy.top().value;
        error += copy.top().error;
        copy.pop();
      }
    }
  }
  // Final exact re-sum, in a fixed order for reproducibility.
  std::vector<Segment> all;
  all.reserve(queue.size());
  while (!queue.empty()) {
    all.push_back(queue.top());
    queue.pop();
  }
  std::sort(all.begin(), all.end(),
            [](const Segment& x, const Segment& y) { return x.a < y.a; });
  double sum = 0.0;
  for (const Segment& s : all) sum += s.value;
  return sum;
}

// ---------------------------------------------------------------------------
// Root finding

RootBracket find_root_bracketed(const std::function<double(double)>& f,
                                double lo, double hi, double tol,
                                std::size_t max_iterations) {
  if (!(tol > 0.0)) throw DomainError("find_root: tolerance must be positive");
  double a = lo;
  double b = hi;
  double fa = f(a);
  double fb = f(b);
  if (fa == 0.0) return {a, a, a, fa, fa};
  if (fb == 0.0) return {b, b, b, fb, fb};
  if ((fa > 0.0) == (fb > 0.0)) {
    throw BracketError("find_root: f(lo) and f(hi) have the same sign");
  }
  double c = a;
  double fc = fa;
  double d = b - a;
  double e = d;
  constexpr double kEps = std::numeric_limits<double>::epsilon();

  for (std::size_t it = 0; it < max_iterations; ++it) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol1 = 2.0 * kEps * std::abs(b) + 0.5 * tol;
    const double xm = 0.5 * (c - b);
    if (fb == 0.0) return {b, b, b, fb, fb};
    if (std::abs(xm) <= tol1) {
      if (b < c) return {b, b, c, fb, fc};
      return {b, c, b, fc, fb};
    }
    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      const double s = fb / fa;
      double p;
      double q;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const double qa = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
        q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      const double min1 = 3.0 * xm * q - std::abs(tol1 * q);
      const double min2 = std::abs(e * q);
      if (2.0 * p < std::min(min1, min2)) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += (std::abs(d) > tol1) ? d : std::copysign(tol1, xm);
    fb = f(b);
  }
  throw ConvergenceError("find_root: iteration budget exhausted");
}

double find_root(const std::function<double(double)>& f, double lo, double hi,
                 double tol) {
  return find_root_bracketed(f, lo, hi, tol).root;
}

}  // namespace midground
