#include "pstab/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "pstab/errors.hpp"

namespace pstab {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

CsvTable::CsvTable(std::vector<std::string> columns, std::string quad_id)
    : columns_(std::move(columns)), quad_id_(std::move(quad_id)) {}

void CsvTable::add_row(const std::vector<double>& values) {
  if (values.size() != columns_.size())
    throw DomainError("CsvTable: row width does not match the column layout");
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (double v : values) cells.push_back(format_double(v));
  rows_.push_back(std::move(cells));
}

void CsvTable::add_row_mixed(const std::vector<std::string>& cells) {
  if (cells.size() != columns_.size())
    throw DomainError("CsvTable: row width does not match the column layout");
  rows_.push_back(cells);
}

std::string CsvTable::to_string() const {
  std::ostringstream os;
  for (size_t i = 0; i < columns_.size(); ++i) os << (i ? "," : "") << columns_[i];
  os << ",quad_id\n";
  for (const auto& row : rows_) {
    for (size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << "," << quad_id_ << "\n";
  }
  return os.str();
}

void CsvTable::write(const std::string& path) const { write_text_file(path, to_string()); }

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw DomainError("cannot open for writing: " + path);
  os << content;
}

namespace {
const char* kSeriesColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                               "#ff7f0e", "#8c564b", "#17becf"};
}

std::string svg_loglog(const std::string& title, const std::string& x_label,
                       const std::vector<SvgSeries>& series, int width, int height) {
  double lx_min = 1e300, lx_max = -1e300, ly_min = 1e300, ly_max = -1e300;
  for (const auto& s : series)
    for (size_t i = 0; i < s.xs.size(); ++i) {
      if (!(s.xs[i] > 0.0) || !(s.ys[i] > 0.0)) continue;
      lx_min = std::min(lx_min, std::log10(s.xs[i]));
      lx_max = std::max(lx_max, std::log10(s.xs[i]));
      ly_min = std::min(ly_min, std::log10(s.ys[i]));
      ly_max = std::max(ly_max, std::log10(s.ys[i]));
    }
  if (lx_min > lx_max) {
    lx_min = ly_min = 0.0;
    lx_max = ly_max = 1.0;
  }
  if (lx_max - lx_min < 1e-12) lx_max = lx_min + 1.0;
  if (ly_max - ly_min < 1e-12) ly_max = ly_min + 1.0;

  const double ml = 70, mr = 160, mt = 40, mb = 50;
  const double pw = width - ml - mr, ph = height - mt - mb;
  auto px = [&](double x) { return ml + (std::log10(x) - lx_min) / (lx_max - lx_min) * pw; };
  auto py = [&](double y) {
    return mt + ph - (std::log10(y) - ly_min) / (ly_max - ly_min) * ph;
  };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
     << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << ml << "\" y=\"24\" font-size=\"15\" font-family=\"monospace\">"
     << title << "</text>\n"
     << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw << "\" height=\"" << ph
     << "\" fill=\"none\" stroke=\"#333\"/>\n";

  for (int d = static_cast<int>(std::ceil(lx_min)); d <= static_cast<int>(std::floor(lx_max));
       ++d) {
    const double x = ml + (d - lx_min) / (lx_max - lx_min) * pw;
    os << "<line x1=\"" << x << "\" y1=\"" << mt << "\" x2=\"" << x << "\" y2=\"" << mt + ph
       << "\" stroke=\"#ddd\"/>\n"
       << "<text x=\"" << x - 12 << "\" y=\"" << mt + ph + 18
       << "\" font-size=\"11\" font-family=\"monospace\">1e" << d << "</text>\n";
  }
  for (int d = static_cast<int>(std::ceil(ly_min)); d <= static_cast<int>(std::floor(ly_max));
       ++d) {
    const double y = mt + ph - (d - ly_min) / (ly_max - ly_min) * ph;
    os << "<line x1=\"" << ml << "\" y1=\"" << y << "\" x2=\"" << ml + pw << "\" y2=\"" << y
       << "\" stroke=\"#ddd\"/>\n"
       << "<text x=\"8\" y=\"" << y + 4
       << "\" font-size=\"11\" font-family=\"monospace\">1e" << d << "</text>\n";
  }
  os << "<text x=\"" << ml + pw / 2 - 20 << "\" y=\"" << height - 12
     << "\" font-size=\"12\" font-family=\"monospace\">" << x_label << "</text>\n";

  int ci = 0;
  for (const auto& s : series) {
    const char* color = kSeriesColors[ci % 7];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (size_t i = 0; i < s.xs.size(); ++i) {
      if (!(s.xs[i] > 0.0) || !(s.ys[i] > 0.0)) continue;
      os << px(s.xs[i]) << "," << py(s.ys[i]) << " ";
    }
    os << "\"/>\n";
    for (size_t i = 0; i < s.xs.size(); ++i) {
      if (!(s.xs[i] > 0.0) || !(s.ys[i] > 0.0)) continue;
      os << "<circle cx=\"" << px(s.xs[i]) << "\" cy=\"" << py(s.ys[i])
         << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    }
    std::string label = s.label;
    if (s.annotate_slope) {
      char buf[48];
      std::snprintf(buf, sizeof(buf), " (slope %.3f)", s.fitted_slope);
      label += buf;
    }
    os << "<text x=\"" << ml + pw + 8 << "\" y=\"" << mt + 16 + 18 * ci
       << "\" font-size=\"11\" font-family=\"monospace\" fill=\"" << color << "\">" << label
       << "</text>\n";
    ++ci;
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace pstab
