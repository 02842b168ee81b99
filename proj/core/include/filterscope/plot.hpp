#pragma once

// Minimal deterministic SVG charts for report figures.

#include <string>
#include <vector>

#include "filterscope/analysis.hpp"

namespace filterscope::plot {

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
  bool dashed = false;
  std::string color = "#1f77b4";
};

struct LinePlot {
  std::string title;
  std::string x_label = "frequency (Hz)";
  std::string y_label;
  std::vector<Series> series;
  /// Shaded vertical spans, drawn behind the data.
  std::vector<BandDefinition> shaded_bands;
};

std::string line_plot_svg(const LinePlot& plot);

struct Bar {
  std::string label;
  double value = 0.0;
  std::string color = "#1f77b4";
};

std::string bar_plot_svg(const std::string& title, const std::string& y_label, const std::vector<Bar>& bars);

/// Colour used for a channel modality in bar plots.
std::string modality_color(Modality modality);

}  // namespace filterscope::plot
