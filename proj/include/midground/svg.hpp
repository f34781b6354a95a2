#pragma once

#include <string>
#include <vector>

namespace midground::svg {

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
  bool dashed = false;
};

struct ChartOptions {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  int width = 640;
  int height = 420;
};

/// Self-contained SVG line chart with axes, ticks and a legend.
std::string line_chart(const std::vector<Series>& series,
                       const ChartOptions& options);

}  // namespace midground::svg
