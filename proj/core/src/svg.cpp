#include "fdehydro/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace fdehydro::svg {

namespace {

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                         "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

std::string render_plot(const PlotSpec& spec, const std::vector<Series>& series) {
  const double W = 640, H = 480;
  const double ml = 70, mr = 20, mt = 40, mb = 50;

  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      double y = s.y[i];
      if (spec.log_y) {
        if (y <= 0.0) continue;
        y = std::log10(y);
      }
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  }
  if (!(xmin < xmax)) {
    xmin -= 0.5;
    xmax += 0.5;
  }
  if (!(ymin < ymax)) {
    ymin -= 0.5;
    ymax += 0.5;
  }
  const double xspan = xmax - xmin, yspan = ymax - ymin;
  auto px = [&](double x) { return ml + (x - xmin) / xspan * (W - ml - mr); };
  auto py = [&](double yv) {
    double y = spec.log_y ? std::log10(yv) : yv;
    return H - mb - (y - ymin) / yspan * (H - mt - mb);
  };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W
     << "\" height=\"" << H << "\">\n";
  os << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        "font-family=\"sans-serif\" font-size=\"16\">"
     << spec.title << "</text>\n";

  // axes
  os << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << W - mr
     << "\" y2=\"" << H - mb << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml
     << "\" y2=\"" << H - mb << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double fx = xmin + xspan * i / 4.0;
    const double fy = ymin + yspan * i / 4.0;
    os << "<text x=\"" << px(fx) << "\" y=\"" << H - mb + 18
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
          "font-size=\"11\">"
       << fmt(fx) << "</text>\n";
    const std::string ylab =
        spec.log_y ? ("1e" + fmt(fy)) : fmt(fy);
    os << "<text x=\"" << ml - 6 << "\" y=\""
       << H - mb - (H - mt - mb) * i / 4.0 + 4
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
       << ylab << "</text>\n";
  }
  os << "<text x=\"" << (ml + W - mr) / 2 << "\" y=\"" << H - 8
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        "font-size=\"13\">"
     << spec.xlabel << "</text>\n";
  os << "<text x=\"16\" y=\"" << (mt + H - mb) / 2
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
        "transform=\"rotate(-90 16 "
     << (mt + H - mb) / 2 << ")\">" << spec.ylabel << "</text>\n";

  int ci = 0;
  for (const auto& s : series) {
    const char* color = kColors[ci % 8];
    ++ci;
    if (!s.scatter) {
      os << "<polyline fill=\"none\" stroke=\"" << color
         << "\" stroke-width=\"1.5\" points=\"";
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        if (spec.log_y && s.y[i] <= 0.0) continue;
        os << px(s.x[i]) << "," << py(s.y[i]) << " ";
      }
      os << "\"/>\n";
    }
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (spec.log_y && s.y[i] <= 0.0) continue;
      os << "<circle cx=\"" << px(s.x[i]) << "\" cy=\"" << py(s.y[i])
         << "\" r=\"" << (s.scatter ? 2.0 : 3.0) << "\" fill=\"" << color
         << "\"/>\n";
    }
    os << "<text x=\"" << W - mr - 8 << "\" y=\"" << mt + 16 * ci
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\" "
          "fill=\""
       << color << "\">" << s.label << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace fdehydro::svg
