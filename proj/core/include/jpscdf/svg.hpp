#pragma once

#include <optional>
#include <string>
#include <vector>

namespace jps {

// Minimal static line chart: axes with ticks, one polyline per series, an
// optional horizontal reference line and a legend. No external dependency.
class SvgChart {
 public:
  SvgChart(std::string title, std::string x_label, std::string y_label)
      : title_(std::move(title)), x_label_(std::move(x_label)), y_label_(std::move(y_label)) {}

  void add_series(std::string label, std::vector<double> xs, std::vector<double> ys);
  void set_reference_line(double y) { reference_y_ = y; }

  std::string render() const;
  void write(const std::string& path) const;

 private:
  struct Series {
    std::string label;
    std::vector<double> xs, ys;
  };

  std::string title_, x_label_, y_label_;
  std::vector<Series> series_;
  std::optional<double> reference_y_;
};

}  // namespace jps
