#include "jpscdf/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace jps {

namespace {

constexpr double kWidth = 720, kHeight = 480;
constexpr double kMarginLeft = 64, kMarginRight = 24, kMarginTop = 40, kMarginBottom = 52;

const char* kPalette[] = {"#c0392b", "#2e6da4", "#222222", "#2e8b57", "#8e44ad", "#b8860b"};

std::string fmt(double v) {
  std::ostringstream ss;
  ss.precision(6);
  ss << v;
  return ss.str();
}

// Round tick step to 1/2/5 times a power of ten.
double nice_step(double span, int target_ticks) {
  const double raw = span / std::max(1, target_ticks);
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double frac = raw / mag;
  const double nice = (frac <= 1.0) ? 1.0 : (frac <= 2.0) ? 2.0 : (frac <= 5.0) ? 5.0 : 10.0;
  return nice * mag;
}

}  // namespace

void SvgChart::add_series(std::string label, std::vector<double> xs, std::vector<double> ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("SvgChart: mismatched series sizes");
  if (xs.empty()) throw std::invalid_argument("SvgChart: empty series");
  series_.push_back({std::move(label), std::move(xs), std::move(ys)});
}

std::string SvgChart::render() const {
  if (series_.empty()) throw std::logic_error("SvgChart: nothing to render");
  double x_min = series_[0].xs[0], x_max = x_min;
  double y_min = series_[0].ys[0], y_max = y_min;
  for (const auto& s : series_) {
    for (const double x : s.xs) { x_min = std::min(x_min, x); x_max = std::max(x_max, x); }
    for (const double y : s.ys) { y_min = std::min(y_min, y); y_max = std::max(y_max, y); }
  }
  if (reference_y_) {
    y_min = std::min(y_min, *reference_y_);
    y_max = std::max(y_max, *reference_y_);
  }
  if (x_max == x_min) { x_max += 1.0; x_min -= 1.0; }
  if (y_max == y_min) { y_max += 1.0; y_min -= 1.0; }
  const double y_pad = 0.05 * (y_max - y_min);
  y_min -= y_pad;
  y_max += y_pad;

  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  const auto px = [&](double x) { return kMarginLeft + (x - x_min) / (x_max - x_min) * plot_w; };
  const auto py = [&](double y) { return kMarginTop + (y_max - y) / (y_max - y_min) * plot_h; };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"15\">" << title_ << "</text>\n";

  // Axes.
  out << "<line x1=\"" << kMarginLeft << "\" y1=\"" << kMarginTop + plot_h << "\" x2=\""
      << kMarginLeft + plot_w << "\" y2=\"" << kMarginTop + plot_h
      << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  out << "<line x1=\"" << kMarginLeft << "\" y1=\"" << kMarginTop << "\" x2=\"" << kMarginLeft
      << "\" y2=\"" << kMarginTop + plot_h << "\" stroke=\"black\" stroke-width=\"1\"/>\n";

  // Ticks and labels.
  const double x_step = nice_step(x_max - x_min, 8);
  for (double x = std::ceil(x_min / x_step) * x_step; x <= x_max + 1e-12; x += x_step) {
    out << "<line x1=\"" << px(x) << "\" y1=\"" << kMarginTop + plot_h << "\" x2=\"" << px(x)
        << "\" y2=\"" << kMarginTop + plot_h + 5 << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << px(x) << "\" y=\"" << kMarginTop + plot_h + 20
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << fmt(x)
        << "</text>\n";
  }
  const double y_step = nice_step(y_max - y_min, 8);
  for (double y = std::ceil(y_min / y_step) * y_step; y <= y_max + 1e-12; y += y_step) {
    out << "<line x1=\"" << kMarginLeft - 5 << "\" y1=\"" << py(y) << "\" x2=\"" << kMarginLeft
        << "\" y2=\"" << py(y) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << kMarginLeft - 8 << "\" y=\"" << py(y) + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << fmt(y)
        << "</text>\n";
  }
  out << "<text x=\"" << kMarginLeft + plot_w / 2 << "\" y=\"" << kHeight - 12
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << x_label_
      << "</text>\n";
  out << "<text x=\"16\" y=\"" << kMarginTop + plot_h / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
      << "transform=\"rotate(-90 16 " << kMarginTop + plot_h / 2 << ")\">" << y_label_
      << "</text>\n";

  if (reference_y_ && *reference_y_ >= y_min && *reference_y_ <= y_max) {
    out << "<line x1=\"" << kMarginLeft << "\" y1=\"" << py(*reference_y_) << "\" x2=\""
        << kMarginLeft + plot_w << "\" y2=\"" << py(*reference_y_)
        << "\" stroke=\"#999999\" stroke-width=\"1\" stroke-dasharray=\"6,4\"/>\n";
  }

  for (std::size_t s = 0; s < series_.size(); ++s) {
    const char* color = kPalette[s % (sizeof kPalette / sizeof kPalette[0])];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < series_[s].xs.size(); ++i) {
      if (i > 0) out << ' ';
      out << fmt(px(series_[s].xs[i])) << ',' << fmt(py(series_[s].ys[i]));
    }
    out << "\"/>\n";
    // Legend entry.
    const double ly = kMarginTop + 14 + 16 * static_cast<double>(s);
    out << "<line x1=\"" << kMarginLeft + plot_w - 110 << "\" y1=\"" << ly << "\" x2=\""
        << kMarginLeft + plot_w - 88 << "\" y2=\"" << ly << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << kMarginLeft + plot_w - 82 << "\" y=\"" << ly + 4
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << series_[s].label << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

void SvgChart::write(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("SvgChart: cannot open " + path);
  out << render();
}

}  // namespace jps
