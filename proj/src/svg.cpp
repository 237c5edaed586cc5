#include "hierenv/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hierenv {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf"};

std::string num(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

struct Frame {
  double x0, y0, w, h;           // plot area in pixels
  double xmin, xmax, ymin, ymax;  // data extents
  double px(double x) const { return x0 + (x - xmin) / (xmax - xmin) * w; }
  double py(double y) const { return y0 + h - (y - ymin) / (ymax - ymin) * h; }
};

void axes(std::ostringstream& os, const Frame& f, const std::string& x_label,
          const std::string& y_label) {
  os << "<rect x='" << num(f.x0) << "' y='" << num(f.y0) << "' width='" << num(f.w)
     << "' height='" << num(f.h) << "' fill='none' stroke='black'/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double xv = f.xmin + (f.xmax - f.xmin) * i / 5;
    const double yv = f.ymin + (f.ymax - f.ymin) * i / 5;
    os << "<line x1='" << num(f.px(xv)) << "' y1='" << num(f.y0 + f.h) << "' x2='"
       << num(f.px(xv)) << "' y2='" << num(f.y0 + f.h + 5) << "' stroke='black'/>\n"
       << "<text x='" << num(f.px(xv)) << "' y='" << num(f.y0 + f.h + 18)
       << "' font-size='11' text-anchor='middle'>" << num(xv) << "</text>\n"
       << "<line x1='" << num(f.x0 - 5) << "' y1='" << num(f.py(yv)) << "' x2='"
       << num(f.x0) << "' y2='" << num(f.py(yv)) << "' stroke='black'/>\n"
       << "<text x='" << num(f.x0 - 8) << "' y='" << num(f.py(yv) + 4)
       << "' font-size='11' text-anchor='end'>" << num(yv) << "</text>\n";
  }
  os << "<text x='" << num(f.x0 + f.w / 2) << "' y='" << num(f.y0 + f.h + 36)
     << "' font-size='13' text-anchor='middle'>" << x_label << "</text>\n";
  os << "<text x='14' y='" << num(f.y0 + f.h / 2)
     << "' font-size='13' text-anchor='middle' transform='rotate(-90 14 "
     << num(f.y0 + f.h / 2) << ")'>" << y_label << "</text>\n";
}

std::string color_map(double u) {
  // Dark blue -> yellow gradient.
  u = std::clamp(u, 0.0, 1.0);
  const int r = static_cast<int>(std::lround(255 * u));
  const int g = static_cast<int>(std::lround(30 + 190 * u));
  const int b = static_cast<int>(std::lround(120 * (1.0 - u) + 40));
  std::ostringstream os;
  os << "rgb(" << r << ',' << g << ',' << b << ')';
  return os.str();
}

}  // namespace

std::string svg_curve(const std::vector<SvgSeries>& series, const std::string& x_label,
                      const std::string& y_label, int width, int height) {
  double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  bool first = true;
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (first) {
        xmin = xmax = s.x[i];
        ymin = ymax = s.y[i];
        first = false;
      }
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      ymin = std::min(ymin, s.y[i]);
      ymax = std::max(ymax, s.y[i]);
    }
  if (xmax <= xmin) xmax = xmin + 1;
  if (ymax <= ymin) ymax = ymin + 1;
  const double pad = 0.05 * (ymax - ymin);
  ymin -= pad;
  ymax += pad;

  Frame f{60, 20, width - 80.0, height - 70.0, xmin, xmax, ymin, ymax};
  std::ostringstream os;
  os << "<svg xmlns='http://www.w3.org/2000/svg' version='1.1' width='" << width
     << "' height='" << height << "'>\n";
  axes(os, f, x_label, y_label);
  int ci = 0;
  for (const auto& s : series) {
    const char* color = kPalette[ci % 7];
    os << "<polyline fill='none' stroke='" << color << "' stroke-width='1.5' points='";
    for (std::size_t i = 0; i < s.x.size(); ++i)
      os << num(f.px(s.x[i])) << ',' << num(f.py(s.y[i])) << ' ';
    os << "'/>\n";
    if (!s.name.empty())
      os << "<text x='" << num(f.x0 + f.w - 6) << "' y='" << num(f.y0 + 16 + 16 * ci)
         << "' font-size='12' text-anchor='end' fill='" << color << "'>" << s.name
         << "</text>\n";
    ++ci;
  }
  os << "</svg>\n";
  return os.str();
}

std::string svg_heatmap(const std::vector<double>& values, int nx, int ny, double x_min,
                        double x_max, double y_min, double y_max,
                        const std::string& x_label, const std::string& y_label,
                        double contour_level, int width, int height) {
  double vmax = 0.0;
  for (double v : values)
    if (std::isfinite(v)) vmax = std::max(vmax, v);
  if (vmax <= 0.0) vmax = 1.0;

  Frame f{60, 20, width - 80.0, height - 70.0, x_min, x_max, y_min, y_max};
  std::ostringstream os;
  os << "<svg xmlns='http://www.w3.org/2000/svg' version='1.1' width='" << width
     << "' height='" << height << "'>\n";
  const double cw = f.w / nx, ch = f.h / ny;
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j) {
      const double v = values[static_cast<std::size_t>(i) * ny + j];
      const std::string fill = std::isfinite(v) ? color_map(v / vmax) : "#888888";
      os << "<rect x='" << num(f.x0 + i * cw) << "' y='" << num(f.y0 + f.h - (j + 1) * ch)
         << "' width='" << num(cw + 0.5) << "' height='" << num(ch + 0.5) << "' fill='"
         << fill << "'/>\n";
    }
  if (contour_level >= 0.0 && nx > 1 && ny > 1) {
    // Boundary segments where neighboring cells straddle the contour level.
    auto at = [&](int i, int j) { return values[static_cast<std::size_t>(i) * ny + j]; };
    for (int i = 0; i < nx; ++i)
      for (int j = 0; j < ny; ++j) {
        if (i + 1 < nx && (at(i, j) > contour_level) != (at(i + 1, j) > contour_level)) {
          const double x = f.x0 + (i + 1) * cw;
          os << "<line x1='" << num(x) << "' y1='" << num(f.y0 + f.h - (j + 1) * ch)
             << "' x2='" << num(x) << "' y2='" << num(f.y0 + f.h - j * ch)
             << "' stroke='white' stroke-width='1.5'/>\n";
        }
        if (j + 1 < ny && (at(i, j) > contour_level) != (at(i, j + 1) > contour_level)) {
          const double y = f.y0 + f.h - (j + 1) * ch;
          os << "<line x1='" << num(f.x0 + i * cw) << "' y1='" << num(y) << "' x2='"
             << num(f.x0 + (i + 1) * cw) << "' y2='" << num(y)
             << "' stroke='white' stroke-width='1.5'/>\n";
        }
      }
  }
  axes(os, f, x_label, y_label);
  os << "</svg>\n";
  return os.str();
}

}  // namespace hierenv
