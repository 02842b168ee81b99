#include "filterscope/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace filterscope::plot {
namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 400.0;
constexpr double kLeft = 64.0;
constexpr double kRight = 16.0;
constexpr double kTop = 36.0;
constexpr double kBottom = 52.0;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
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

// Round step of roughly `span / 5`.
double tick_step(double span) {
  if (!(span > 0.0)) return 1.0;
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (m * mag >= raw) return m * mag;
  }
  return 10.0 * mag;
}

std::string band_symbol(const std::string& name) {
  if (name == "delta") return "δ";
  if (name == "theta") return "θ";
  if (name == "alpha") return "α";
  if (name == "beta") return "β";
  if (name == "gamma") return "γ";
  return name;
}

std::string header(const std::string& title) {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" + num(kHeight) +
         "\" viewBox=\"0 0 " + num(kWidth) + " " + num(kHeight) + "\" font-family=\"sans-serif\" font-size=\"12\">\n" +
         "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n" + "<text x=\"" + num(kWidth / 2) +
         "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" + escape(title) + "</text>\n";
}

}  // namespace

std::string modality_color(Modality modality) {
  switch (modality) {
    case Modality::EEG: return "#1f77b4";
    case Modality::EOG: return "#d62728";
    case Modality::EMG: return "#2ca02c";
    case Modality::Other: return "#7f7f7f";
  }
  return "#7f7f7f";
}

std::string line_plot_svg(const LinePlot& plot) {
  double x_min = std::numeric_limits<double>::infinity(), x_max = -x_min;
  double y_min = 0.0, y_max = -std::numeric_limits<double>::infinity();
  for (const auto& s : plot.series) {
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      x_min = std::min(x_min, s.x[i]);
      x_max = std::max(x_max, s.x[i]);
      y_min = std::min(y_min, s.y[i]);
      y_max = std::max(y_max, s.y[i]);
    }
  }
  if (!std::isfinite(x_min)) {
    x_min = 0.0;
    x_max = 1.0;
  }
  if (!(x_max > x_min)) x_max = x_min + 1.0;
  if (!std::isfinite(y_max) || !(y_max > y_min)) y_max = y_min + 1.0;
  y_max *= 1.05;

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  const auto px = [&](double x) { return kLeft + (x - x_min) / (x_max - x_min) * pw; };
  const auto py = [&](double y) { return kTop + ph - (y - y_min) / (y_max - y_min) * ph; };

  std::string out = header(plot.title);
  for (std::size_t b = 0; b < plot.shaded_bands.size(); ++b) {
    const auto& band = plot.shaded_bands[b];
    const double lo = std::max(band.low_hz, x_min);
    const double hi = std::min(band.high_hz, x_max);
    if (!(hi > lo)) continue;
    const char* fill = b % 2 == 0 ? "#e8e8e8" : "#f4f4f4";
    out += "<rect x=\"" + num(px(lo)) + "\" y=\"" + num(kTop) + "\" width=\"" + num(px(hi) - px(lo)) + "\" height=\"" +
           num(ph) + "\" fill=\"" + fill + "\"/>\n";
    out += "<text x=\"" + num((px(lo) + px(hi)) / 2) + "\" y=\"" + num(kTop + 14) + "\" text-anchor=\"middle\" fill=\"#555\">" +
           escape(band_symbol(band.name)) + "</text>\n";
  }

  // axes and ticks
  out += "<g stroke=\"black\" fill=\"none\"><line x1=\"" + num(kLeft) + "\" y1=\"" + num(kTop + ph) + "\" x2=\"" +
         num(kLeft + pw) + "\" y2=\"" + num(kTop + ph) + "\"/><line x1=\"" + num(kLeft) + "\" y1=\"" + num(kTop) +
         "\" x2=\"" + num(kLeft) + "\" y2=\"" + num(kTop + ph) + "\"/></g>\n";
  const double xs = tick_step(x_max - x_min);
  for (double t = std::ceil(x_min / xs) * xs; t <= x_max + 1e-9; t += xs) {
    out += "<text x=\"" + num(px(t)) + "\" y=\"" + num(kTop + ph + 16) + "\" text-anchor=\"middle\">" + num(t) +
           "</text>\n";
  }
  const double ys = tick_step(y_max - y_min);
  for (double t = std::ceil(y_min / ys) * ys; t <= y_max + 1e-9; t += ys) {
    out += "<text x=\"" + num(kLeft - 6) + "\" y=\"" + num(py(t) + 4) + "\" text-anchor=\"end\">" + num(t) + "</text>\n";
  }
  out += "<text x=\"" + num(kLeft + pw / 2) + "\" y=\"" + num(kHeight - 12) + "\" text-anchor=\"middle\">" +
         escape(plot.x_label) + "</text>\n";
  out += "<text transform=\"translate(16," + num(kTop + ph / 2) + ") rotate(-90)\" text-anchor=\"middle\">" +
         escape(plot.y_label) + "</text>\n";

  for (std::size_t si = 0; si < plot.series.size(); ++si) {
    const auto& s = plot.series[si];
    std::string points;
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      points += num(px(s.x[i])) + "," + num(py(s.y[i])) + " ";
    }
    if (!points.empty()) points.pop_back();
    out += "<polyline fill=\"none\" stroke=\"" + s.color + "\" stroke-width=\"1.8\"" +
           (s.dashed ? std::string(" stroke-dasharray=\"6,4\"") : std::string()) + " points=\"" + points + "\"/>\n";
    const double ly = kTop + 30 + 16 * static_cast<double>(si);
    out += "<line x1=\"" + num(kLeft + pw - 150) + "\" y1=\"" + num(ly) + "\" x2=\"" + num(kLeft + pw - 125) +
           "\" y2=\"" + num(ly) + "\" stroke=\"" + s.color + "\" stroke-width=\"1.8\"" +
           (s.dashed ? std::string(" stroke-dasharray=\"6,4\"") : std::string()) + "/>\n";
    out += "<text x=\"" + num(kLeft + pw - 120) + "\" y=\"" + num(ly + 4) + "\">" + escape(s.name) + "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

std::string bar_plot_svg(const std::string& title, const std::string& y_label, const std::vector<Bar>& bars) {
  double lo = 0.0, hi = 0.0;
  for (const auto& b : bars) {
    if (!std::isfinite(b.value)) continue;
    lo = std::min(lo, b.value);
    hi = std::max(hi, b.value);
  }
  if (!(hi > lo)) hi = lo + 1.0;
  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  const auto py = [&](double y) { return kTop + ph - (y - lo) / (hi - lo) * ph; };

  std::string out = header(title);
  out += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(py(0.0)) + "\" x2=\"" + num(kLeft + pw) + "\" y2=\"" +
         num(py(0.0)) + "\" stroke=\"black\"/>\n";
  const double ys = tick_step(hi - lo);
  for (double t = std::ceil(lo / ys) * ys; t <= hi + 1e-9; t += ys) {
    out += "<text x=\"" + num(kLeft - 6) + "\" y=\"" + num(py(t) + 4) + "\" text-anchor=\"end\">" + num(t) + "</text>\n";
  }
  out += "<text transform=\"translate(16," + num(kTop + ph / 2) + ") rotate(-90)\" text-anchor=\"middle\">" +
         escape(y_label) + "</text>\n";
  const double slot = bars.empty() ? pw : pw / static_cast<double>(bars.size());
  for (std::size_t i = 0; i < bars.size(); ++i) {
    const double x = kLeft + slot * static_cast<double>(i) + slot * 0.15;
    const double v = std::isfinite(bars[i].value) ? bars[i].value : 0.0;
    const double top = std::min(py(v), py(0.0));
    const double h = std::abs(py(v) - py(0.0));
    out += "<rect x=\"" + num(x) + "\" y=\"" + num(top) + "\" width=\"" + num(slot * 0.7) + "\" height=\"" + num(h) +
           "\" fill=\"" + bars[i].color + "\"/>\n";
    out += "<text x=\"" + num(x + slot * 0.35) + "\" y=\"" + num(kTop + ph + 16) + "\" text-anchor=\"middle\">" +
           escape(bars[i].label) + "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace filterscope::plot
