#pragma once

#include <string>
#include <vector>

namespace fdehydro::svg {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  bool scatter = false;  // points only, no connecting line
};

struct PlotSpec {
  std::string title;
  std::string xlabel;
  std::string ylabel;
  bool log_y = false;
};

// Static SVG line/scatter plot; log_y clamps nonpositive values out.
std::string render_plot(const PlotSpec& spec, const std::vector<Series>& series);

}  // namespace fdehydro::svg
