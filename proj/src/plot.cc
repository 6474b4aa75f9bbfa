#include "leachsim/plot.h"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "leachsim/csv.h"
#include "leachsim/errors.h"

namespace leachsim {

namespace {

constexpr double kWidth = 800;
constexpr double kHeight = 500;
constexpr double kLeft = 80;
constexpr double kRight = 190;  // legend column
constexpr double kTop = 50;
constexpr double kBottom = 60;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", std::abs(v) < 1e-12 ? 0.0 : v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Axis {
  double lo;
  double hi;
  double step;
};

/// 1-2-5 tick spacing covering [lo, hi] with about five intervals.
Axis nice_axis(double lo, double hi) {
  if (hi == lo) {
    const double pad = lo == 0.0 ? 1.0 : std::abs(lo) * 0.1;
    lo -= pad;
    hi += pad;
  }
  const double raw = (hi - lo) / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double frac = raw / mag;
  const double step = (frac <= 1.0 ? 1.0 : frac <= 2.0 ? 2.0 : frac <= 5.0 ? 5.0 : 10.0) * mag;
  return {std::floor(lo / step) * step, std::ceil(hi / step) * step, step};
}

}  // namespace

std::string render_svg(const std::vector<Series>& series, PlotKind kind, const PlotLabels& labels) {
  if (kind != PlotKind::line) throw DomainError("unsupported plot kind");
  if (series.empty()) throw DomainError("nothing to plot: empty series collection");

  double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
  for (const auto& s : series) {
    if (s.points.empty()) throw DomainError("series '" + s.name + "' has no points");
    for (const auto& [x, y] : s.points) {
      if (!std::isfinite(x) || !std::isfinite(y)) {
        throw DomainError("series '" + s.name + "' has a non-finite point");
      }
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  }
  const Axis ax = nice_axis(xmin, xmax);
  const Axis ay = nice_axis(ymin, ymax);

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - ax.lo) / (ax.hi - ax.lo) * plot_w; };
  auto py = [&](double y) { return kTop + plot_h - (y - ay.lo) / (ay.hi - ay.lo) * plot_h; };

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" +
         num(kHeight) + "\" viewBox=\"0 0 " + num(kWidth) + " " + num(kHeight) +
         "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!labels.title.empty()) {
    svg += "<text x=\"" + num(kLeft + plot_w / 2) + "\" y=\"28\" text-anchor=\"middle\" font-size=\"15\">" +
           escape(labels.title) + "</text>\n";
  }

  // Grid and ticks.
  svg += "<g stroke=\"#dddddd\" stroke-width=\"1\">\n";
  const int nx = static_cast<int>(std::lround((ax.hi - ax.lo) / ax.step));
  const int ny = static_cast<int>(std::lround((ay.hi - ay.lo) / ay.step));
  for (int i = 0; i <= nx; ++i) {
    const double x = px(ax.lo + i * ax.step);
    svg += "<line x1=\"" + num(x) + "\" y1=\"" + num(kTop) + "\" x2=\"" + num(x) + "\" y2=\"" +
           num(kTop + plot_h) + "\"/>\n";
  }
  for (int i = 0; i <= ny; ++i) {
    const double y = py(ay.lo + i * ay.step);
    svg += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(y) + "\" x2=\"" + num(kLeft + plot_w) +
           "\" y2=\"" + num(y) + "\"/>\n";
  }
  svg += "</g>\n";
  svg += "<rect x=\"" + num(kLeft) + "\" y=\"" + num(kTop) + "\" width=\"" + num(plot_w) +
         "\" height=\"" + num(plot_h) + "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= nx; ++i) {
    const double v = ax.lo + i * ax.step;
    svg += "<text x=\"" + num(px(v)) + "\" y=\"" + num(kTop + plot_h + 18) +
           "\" text-anchor=\"middle\">" + tick_label(v) + "</text>\n";
  }
  for (int i = 0; i <= ny; ++i) {
    const double v = ay.lo + i * ay.step;
    svg += "<text x=\"" + num(kLeft - 8) + "\" y=\"" + num(py(v) + 4) + "\" text-anchor=\"end\">" +
           tick_label(v) + "</text>\n";
  }
  svg += "<text x=\"" + num(kLeft + plot_w / 2) + "\" y=\"" + num(kHeight - 15) +
         "\" text-anchor=\"middle\">" + escape(labels.x_label) + "</text>\n";
  svg += "<text x=\"20\" y=\"" + num(kTop + plot_h / 2) +
         "\" text-anchor=\"middle\" transform=\"rotate(-90 20 " + num(kTop + plot_h / 2) + ")\">" +
         escape(labels.y_label) + "</text>\n";

  for (std::size_t i = 0; i < series.size(); ++i) {
    const char* color = kPalette[i % std::size(kPalette)];
    svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
           "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t k = 0; k < series[i].points.size(); ++k) {
      const auto& [x, y] = series[i].points[k];
      if (k) svg += ' ';
      svg += num(px(x)) + ',' + num(py(y));
    }
    svg += "\"/>\n";

    const double ly = kTop + 10 + static_cast<double>(i) * 20;
    const double lx = kWidth - kRight + 15;
    svg += "<line x1=\"" + num(lx) + "\" y1=\"" + num(ly) + "\" x2=\"" + num(lx + 25) + "\" y2=\"" +
           num(ly) + "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + num(lx + 32) + "\" y=\"" + num(ly + 4) + "\">" + escape(series[i].name) +
           "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

void emit_plot(const std::vector<Series>& series, PlotKind kind, const std::string& path,
               const PlotLabels& labels) {
  write_text_file(path, render_svg(series, kind, labels));
}

}  // namespace leachsim
