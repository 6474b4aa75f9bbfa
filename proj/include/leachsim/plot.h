#pragma once

#include <string>
#include <utility>
#include <vector>

namespace leachsim {

struct Series {
  std::string name;
  std::vector<std::pair<double, double>> points;
};

enum class PlotKind { line };

struct PlotLabels {
  std::string title;
  std::string x_label;
  std::string y_label;
};

/// Static SVG: one polyline per series, a legend, and labeled axes with
/// ticks. Output is a pure function of the input. Throws DomainError for an
/// empty collection or an empty series.
std::string render_svg(const std::vector<Series>& series, PlotKind kind, const PlotLabels& labels);

void emit_plot(const std::vector<Series>& series, PlotKind kind, const std::string& path,
               const PlotLabels& labels = {});

}  // namespace leachsim
