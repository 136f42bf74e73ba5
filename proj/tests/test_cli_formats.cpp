#include <doctest.h>

#include <string>

#include "pstab/report.hpp"

using namespace pstab;

TEST_CASE("csv layout carries the quadrature id on every row") {
  CsvTable t({"a", "b"}, "gk15;rel=1e-10");
  t.add_row({1.0, 2.5});
  t.add_row({3.0, 4.0 / 3.0});
  const std::string s = t.to_string();
  CHECK(s == "a,b,quad_id\n1,2.5,gk15;rel=1e-10\n3,1.33333333333,gk15;rel=1e-10\n");
}

TEST_CASE("csv rejects mismatched rows") {
  CsvTable t({"a", "b"}, "q");
  CHECK_THROWS(t.add_row({1.0}));
}

TEST_CASE("svg plot renders series and slope annotations") {
  SvgSeries s;
  s.label = "deficit";
  s.xs = {1e-2, 1e-3, 1e-4};
  s.ys = {2e-2, 2e-3, 2e-4};
  s.fitted_slope = 1.0;
  s.annotate_slope = true;
  const std::string svg = svg_loglog("sweep", "epsilon", {s});
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("polyline") != std::string::npos);
  CHECK(svg.find("slope 1.000") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
}
