#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "sasim/common.hpp"

namespace sasim {

struct SvgSeries {
  std::string label;
  std::vector<double> x, y;
};

/// Minimal self-contained line chart; enough for eyeballing traces without
/// external tooling.
inline void write_svg_chart(const std::filesystem::path& path,
                            const std::string& title,
                            const std::string& x_label,
                            const std::string& y_label,
                            const std::vector<SvgSeries>& series) {
  static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c",
                                  "#9467bd", "#ff7f0e", "#8c564b"};
  const double W = 960, H = 540, L = 70, R = 24, T = 40, B = 50;
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& s : series) {
    for (double v : s.x) {
      xmin = std::min(xmin, v);
      xmax = std::max(xmax, v);
    }
    for (double v : s.y) {
      ymin = std::min(ymin, v);
      ymax = std::max(ymax, v);
    }
  }
  if (!(xmax > xmin)) xmax = xmin + 1;
  if (!(ymax > ymin)) {
    ymax = ymin + 1;
    ymin -= 1;
  }
  const double pad = 0.05 * (ymax - ymin);
  ymin -= pad;
  ymax += pad;
  const auto px = [&](double x) {
    return L + (x - xmin) / (xmax - xmin) * (W - L - R);
  };
  const auto py = [&](double y) {
    return H - B - (y - ymin) / (ymax - ymin) * (H - T - B);
  };

  std::ofstream f(path);
  require(f.good(), "io-error", "cannot open " + path.string());
  f << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='"
    << H << "' viewBox='0 0 " << W << ' ' << H << "'>\n"
    << "<rect width='100%' height='100%' fill='white'/>\n"
    << "<text x='" << W / 2 << "' y='24' text-anchor='middle' "
       "font-family='sans-serif' font-size='16'>" << title << "</text>\n";
  // axes + ticks
  f << "<line x1='" << L << "' y1='" << H - B << "' x2='" << W - R << "' y2='"
    << H - B << "' stroke='black'/>\n"
    << "<line x1='" << L << "' y1='" << T << "' x2='" << L << "' y2='"
    << H - B << "' stroke='black'/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double xv = xmin + i * (xmax - xmin) / 5;
    const double yv = ymin + i * (ymax - ymin) / 5;
    f << "<text x='" << px(xv) << "' y='" << H - B + 18
      << "' text-anchor='middle' font-family='sans-serif' font-size='11'>"
      << xv << "</text>\n"
      << "<text x='" << L - 6 << "' y='" << py(yv) + 4
      << "' text-anchor='end' font-family='sans-serif' font-size='11'>" << yv
      << "</text>\n"
      << "<line x1='" << L << "' y1='" << py(yv) << "' x2='" << W - R
      << "' y2='" << py(yv) << "' stroke='#dddddd'/>\n";
  }
  f << "<text x='" << (L + W - R) / 2 << "' y='" << H - 10
    << "' text-anchor='middle' font-family='sans-serif' font-size='13'>"
    << x_label << "</text>\n"
    << "<text x='16' y='" << (T + H - B) / 2
    << "' text-anchor='middle' font-family='sans-serif' font-size='13' "
       "transform='rotate(-90 16 " << (T + H - B) / 2 << ")'>" << y_label
    << "</text>\n";
  int ci = 0;
  for (const auto& s : series) {
    const char* color = kColors[ci % 6];
    f << "<polyline fill='none' stroke='" << color
      << "' stroke-width='1.2' points='";
    const size_t stride = std::max<size_t>(1, s.x.size() / 4000);
    for (size_t k = 0; k < s.x.size(); k += stride)
      f << px(s.x[k]) << ',' << py(s.y[k]) << ' ';
    f << "'/>\n";
    f << "<text x='" << W - R - 8 << "' y='" << T + 16 + 16 * ci
      << "' text-anchor='end' font-family='sans-serif' font-size='12' fill='"
      << color << "'>" << s.label << "</text>\n";
    ++ci;
  }
  f << "</svg>\n";
  require(f.good(), "io-error", "write failed for " + path.string());
}

}  // namespace sasim
