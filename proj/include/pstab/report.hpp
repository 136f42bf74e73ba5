#pragma once

#include <string>
#include <vector>

namespace pstab {

// Fixed-layout CSV with deterministic "%.12g" formatting; the quadrature
// identifier rides along as the last column of every row.
class CsvTable {
 public:
  CsvTable(std::vector<std::string> columns, std::string quad_id);

  void add_row(const std::vector<double>& values);
  void add_row_mixed(const std::vector<std::string>& cells);

  std::string to_string() const;
  void write(const std::string& path) const;

 private:
  std::vector<std::string> columns_;
  std::string quad_id_;
  std::vector<std::vector<std::string>> rows_;
};

std::string format_double(double v);

// Minimal log-log SVG plot: one polyline per series plus slope annotations.
struct SvgSeries {
  std::string label;
  std::vector<double> xs;
  std::vector<double> ys;
  double fitted_slope = 0.0;
  bool annotate_slope = false;
};

std::string svg_loglog(const std::string& title, const std::string& x_label,
                       const std::vector<SvgSeries>& series, int width = 640,
                       int height = 480);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace pstab
