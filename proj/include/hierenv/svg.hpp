#pragma once

#include <string>
#include <vector>

namespace hierenv {

struct SvgSeries {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

// Static SVG 1.1 line plot with axes and tick labels.
std::string svg_curve(const std::vector<SvgSeries>& series, const std::string& x_label,
                      const std::string& y_label, int width = 640, int height = 480);

// Heat map of a row-major grid (nx rows of ny cells), optional boundary
// contour at the given level.
std::string svg_heatmap(const std::vector<double>& values, int nx, int ny, double x_min,
                        double x_max, double y_min, double y_max,
                        const std::string& x_label, const std::string& y_label,
                        double contour_level = -1.0, int width = 640, int height = 520);

}  // namespace hierenv
