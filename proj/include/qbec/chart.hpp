#pragma once
// Minimal deterministic SVG 1.1 line charts.  No plotting dependency: the
// output must be byte-reproducible across runs and machines, so every
// coordinate is formatted with fixed precision.

#include <optional>
#include <string>
#include <vector>

namespace qbec {

struct ChartSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

struct ChartSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  // Horizontal reference line (e.g. a steady-state asymptote), drawn dashed.
  std::optional<double> reference;
  std::string reference_label;
};

std::string render_line_chart(const ChartSpec& spec,
                              const std::vector<ChartSeries>& series);

void write_line_chart(const std::string& path, const ChartSpec& spec,
                      const std::vector<ChartSeries>& series);

}  // namespace qbec
