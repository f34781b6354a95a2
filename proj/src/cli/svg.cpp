#include "midground/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace midground::svg {

namespace {

const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                               "#ff7f0e", "#8c564b"};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

std::string label(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

// Roughly five round-numbered ticks covering [lo, hi].
std::vector<double> linear_ticks(double lo, double hi) {
  const double raw = (hi - lo) / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    step = m * mag;
    if (step >= raw) break;
  }
  std::vector<double> ticks;
  for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * step; t += step) {
    ticks.push_back(std::abs(t) < 1e-12 * step ? 0.0 : t);
  }
  return ticks;
}

}  // namespace

std::string line_chart(const std::vector<Series>& series,
                       const ChartOptions& options) {
  const double left = 70, right = 150, top = 40, bottom = 55;
  const double pw = options.width - left - right;
  const double ph = options.height - top - bottom;

  auto tx = [&](double x) { return options.log_x ? std::log10(x) : x; };
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0;
  double y0 = x0, y1 = -x0;
  for (const Series& s : series) {
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!std::isfinite(s.y[i]) || (options.log_x && !(s.x[i] > 0))) continue;
      x0 = std::min(x0, tx(s.x[i]));
      x1 = std::max(x1, tx(s.x[i]));
      y0 = std::min(y0, s.y[i]);
      y1 = std::max(y1, s.y[i]);
    }
  }
  if (!(x0 < x1)) { x0 -= 0.5; x1 += 0.5; }
  if (!(y0 < y1)) { y0 -= 0.5; y1 += 0.5; }
  const double pad = 0.05 * (y1 - y0);
  y0 -= pad;
  y1 += pad;

  auto px = [&](double x) { return left + (tx(x) - x0) / (x1 - x0) * pw; };
  auto py = [&](double y) { return top + (y1 - y) / (y1 - y0) * ph; };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.width
    << "\" height=\"" << options.height << "\" font-family=\"sans-serif\" "
    << "font-size=\"12\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << num(left + pw / 2) << "\" y=\"22\" text-anchor=\"middle\" "
    << "font-size=\"14\">" << escape(options.title) << "</text>\n";
  o << "<rect x=\"" << num(left) << "\" y=\"" << num(top) << "\" width=\""
    << num(pw) << "\" height=\"" << num(ph)
    << "\" fill=\"none\" stroke=\"black\"/>\n";

  if (options.log_x) {
    for (double e = std::ceil(x0); e <= x1 + 1e-9; e += 1.0) {
      const double x = std::pow(10.0, e);
      o << "<line x1=\"" << num(px(x)) << "\" y1=\"" << num(top + ph)
        << "\" x2=\"" << num(px(x)) << "\" y2=\"" << num(top + ph + 5)
        << "\" stroke=\"black\"/>\n";
      o << "<text x=\"" << num(px(x)) << "\" y=\"" << num(top + ph + 18)
        << "\" text-anchor=\"middle\">" << label(x) << "</text>\n";
    }
  } else {
    for (double x : linear_ticks(x0, x1)) {
      o << "<line x1=\"" << num(px(x)) << "\" y1=\"" << num(top + ph)
        << "\" x2=\"" << num(px(x)) << "\" y2=\"" << num(top + ph + 5)
        << "\" stroke=\"black\"/>\n";
      o << "<text x=\"" << num(px(x)) << "\" y=\"" << num(top + ph + 18)
        << "\" text-anchor=\"middle\">" << label(x) << "</text>\n";
    }
  }
  for (double y : linear_ticks(y0, y1)) {
    o << "<line x1=\"" << num(left - 5) << "\" y1=\"" << num(py(y))
      << "\" x2=\"" << num(left) << "\" y2=\"" << num(py(y))
      << "\" stroke=\"black\"/>\n";
    o << "<text x=\"" << num(left - 8) << "\" y=\"" << num(py(y) + 4)
      << "\" text-anchor=\"end\">" << label(y) << "</text>\n";
  }
  o << "<text x=\"" << num(left + pw / 2) << "\" y=\""
    << num(options.height - 12) << "\" text-anchor=\"middle\">"
    << escape(options.x_label) << "</text>\n";
  o << "<text transform=\"translate(18," << num(top + ph / 2)
    << ") rotate(-90)\" text-anchor=\"middle\">" << escape(options.y_label)
    << "</text>\n";

  for (std::size_t k = 0; k < series.size(); ++k) {
    const Series& s = series[k];
    const char* color = kColors[k % std::size(kColors)];
    o << "<polyline fill=\"none\" stroke=\"" << color
      << "\" stroke-width=\"1.5\"";
    if (s.dashed) o << " stroke-dasharray=\"5,4\"";
    o << " points=\"";
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!std::isfinite(s.y[i]) || (options.log_x && !(s.x[i] > 0))) continue;
      o << num(px(s.x[i])) << ',' << num(py(s.y[i])) << ' ';
    }
    o << "\"/>\n";
    const double ly = top + 15 + 18 * static_cast<double>(k);
    o << "<line x1=\"" << num(left + pw + 10) << "\" y1=\"" << num(ly)
      << "\" x2=\"" << num(left + pw + 30) << "\" y2=\"" << num(ly)
      << "\" stroke=\"" << color << "\" stroke-width=\"1.5\"/>\n";
    o << "<text x=\"" << num(left + pw + 35) << "\" y=\"" << num(ly + 4)
      << "\">" << escape(s.name) << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

}  // namespace midground::svg
