#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace splinerom {

struct PlotSeries {
  std::string name;
  std::vector<double> xs;
  std::vector<double> ys;
};

/// Standalone SVG line chart with axes, min/max tick labels and a legend.
void write_svg_line_chart(std::ostream& out, const std::string& title,
                          const std::vector<PlotSeries>& series);

}  // namespace splinerom
