#include "qbec/chart.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "qbec/types.hpp"

namespace qbec {

namespace {

constexpr double kWidth = 860.0;
constexpr double kHeight = 520.0;
constexpr double kLeft = 72.0;
constexpr double kRight = 24.0;
constexpr double kTop = 44.0;
constexpr double kBottom = 56.0;

const char* const kPalette[] = {"#1b6ca8", "#c0392b", "#27ae60",
                                "#8e44ad", "#e67e22", "#2c3e50"};
const char* const kDashes[] = {"", "7,4", "2,3", "10,4,2,4", "1,3", "5,2"};

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), pattern, v);
  return buf;
}

std::string px(double v) { return fmt("%.2f", v); }

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_line_chart(const ChartSpec& spec,
                              const std::vector<ChartSeries>& series) {
  double x_min = std::numeric_limits<double>::infinity();
  double x_max = -x_min;
  double y_min = x_min;
  double y_max = -x_min;
  for (const auto& s : series) {
    for (const auto& [x, y] : s.points) {
      if (!std::isfinite(x) || !std::isfinite(y))
        throw ValidationError("chart points must be finite");
      x_min = std::min(x_min, x);
      x_max = std::max(x_max, x);
      y_min = std::min(y_min, y);
      y_max = std::max(y_max, y);
    }
  }
  if (!(x_min <= x_max)) throw ValidationError("chart needs at least one point");
  if (spec.reference) {
    y_min = std::min(y_min, *spec.reference);
    y_max = std::max(y_max, *spec.reference);
  }
  if (x_max == x_min) x_max = x_min + 1.0;
  const double pad = y_max == y_min ? 0.5 : 0.06 * (y_max - y_min);
  y_min -= pad;
  y_max += pad;

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto sx = [&](double x) { return kLeft + (x - x_min) / (x_max - x_min) * plot_w; };
  auto sy = [&](double y) { return kTop + (y_max - y) / (y_max - y_min) * plot_h; };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
         px(kWidth) + "\" height=\"" + px(kHeight) + "\" viewBox=\"0 0 " +
         px(kWidth) + " " + px(kHeight) + "\">\n";
  svg += "<rect width=\"" + px(kWidth) + "\" height=\"" + px(kHeight) +
         "\" fill=\"#ffffff\"/>\n";
  svg += "<text x=\"" + px(kWidth / 2) +
         "\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\" "
         "text-anchor=\"middle\">" +
         escape(spec.title) + "</text>\n";

  // Axes, ticks, grid.
  svg += "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333333\">\n";
  const int n_ticks = 6;
  for (int i = 0; i < n_ticks; ++i) {
    const double fx = x_min + (x_max - x_min) * i / (n_ticks - 1);
    const double fy = y_min + (y_max - y_min) * i / (n_ticks - 1);
    const std::string gx = px(sx(fx));
    const std::string gy = px(sy(fy));
    svg += "<line x1=\"" + gx + "\" y1=\"" + px(kTop) + "\" x2=\"" + gx +
           "\" y2=\"" + px(kTop + plot_h) +
           "\" stroke=\"#e0e0e0\" stroke-width=\"1\"/>\n";
    svg += "<line x1=\"" + px(kLeft) + "\" y1=\"" + gy + "\" x2=\"" +
           px(kLeft + plot_w) + "\" y2=\"" + gy +
           "\" stroke=\"#e0e0e0\" stroke-width=\"1\"/>\n";
    svg += "<text x=\"" + gx + "\" y=\"" + px(kTop + plot_h + 16) +
           "\" text-anchor=\"middle\">" + fmt("%.4g", fx) + "</text>\n";
    svg += "<text x=\"" + px(kLeft - 8) + "\" y=\"" + px(sy(fy) + 4) +
           "\" text-anchor=\"end\">" + fmt("%.4g", fy) + "</text>\n";
  }
  svg += "</g>\n";
  svg += "<rect x=\"" + px(kLeft) + "\" y=\"" + px(kTop) + "\" width=\"" +
         px(plot_w) + "\" height=\"" + px(plot_h) +
         "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";

  if (spec.reference) {
    const std::string gy = px(sy(*spec.reference));
    svg += "<line x1=\"" + px(kLeft) + "\" y1=\"" + gy + "\" x2=\"" +
           px(kLeft + plot_w) + "\" y2=\"" + gy +
           "\" stroke=\"#666666\" stroke-width=\"1.2\" "
           "stroke-dasharray=\"6,5\"/>\n";
    if (!spec.reference_label.empty())
      svg += "<text x=\"" + px(kLeft + 6) + "\" y=\"" + px(sy(*spec.reference) - 5) +
             "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#666666\">" +
             escape(spec.reference_label) + "</text>\n";
  }

  for (std::size_t k = 0; k < series.size(); ++k) {
    const char* color = kPalette[k % std::size(kPalette)];
    const char* dash = kDashes[k % std::size(kDashes)];
    std::string pts;
    for (const auto& [x, y] : series[k].points) {
      if (!pts.empty()) pts += ' ';
      pts += px(sx(x)) + ',' + px(sy(y));
    }
    svg += "<polyline fill=\"none\" stroke=\"";
    svg += color;
    svg += "\" stroke-width=\"1.6\"";
    if (*dash) {
      svg += " stroke-dasharray=\"";
      svg += dash;
      svg += "\"";
    }
    svg += " points=\"" + pts + "\"/>\n";
  }

  // Legend, top-right inside the frame.
  double ly = kTop + 16.0;
  for (std::size_t k = 0; k < series.size(); ++k) {
    const char* color = kPalette[k % std::size(kPalette)];
    const char* dash = kDashes[k % std::size(kDashes)];
    const double lx = kLeft + plot_w - 190.0;
    svg += "<line x1=\"" + px(lx) + "\" y1=\"" + px(ly - 4) + "\" x2=\"" +
           px(lx + 28) + "\" y2=\"" + px(ly - 4) + "\" stroke=\"";
    svg += color;
    svg += "\" stroke-width=\"1.6\"";
    if (*dash) {
      svg += " stroke-dasharray=\"";
      svg += dash;
      svg += "\"";
    }
    svg += "/>\n";
    svg += "<text x=\"" + px(lx + 34) + "\" y=\"" + px(ly) +
           "\" font-family=\"sans-serif\" font-size=\"12\">" +
           escape(series[k].label) + "</text>\n";
    ly += 16.0;
  }

  svg += "<text x=\"" + px(kLeft + plot_w / 2) + "\" y=\"" + px(kHeight - 14) +
         "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">" +
         escape(spec.x_label) + "</text>\n";
  svg += "<text x=\"18\" y=\"" + px(kTop + plot_h / 2) +
         "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" "
         "transform=\"rotate(-90 18 " +
         px(kTop + plot_h / 2) + ")\">" + escape(spec.y_label) + "</text>\n";
  svg += "</svg>\n";
  return svg;
}

void write_line_chart(const std::string& path, const ChartSpec& spec,
                      const std::vector<ChartSeries>& series) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot open SVG output path: " + path);
  out << render_line_chart(spec, series);
  if (!out) throw ValidationError("failed writing SVG: " + path);
}

}  // namespace qbec
