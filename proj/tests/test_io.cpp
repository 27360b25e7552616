#include <doctest.h>

#include <cstdlib>
#include <cstring>
#include <sstream>

#include "blockspin/io.hpp"
#include "blockspin/svg.hpp"

using namespace blockspin;

TEST_CASE("format_double round-trips and uses '.' decimals") {
  for (double v : {0.1, -2.718281828459045, 1e-300, 0.0, 42.0}) {
    const std::string s = format_double(v);
    CHECK(std::strtod(s.c_str(), nullptr) == v);
    CHECK(s.find(',') == std::string::npos);
  }
}

TEST_CASE("samples CSV: header, rows, newline endings") {
  std::ostringstream os;
  write_samples_csv(os, {{0.5, -0.25}, {1.0, 0.0}}, 3);
  CHECK(os.str() == "sweep,m_1,m_2\n3,0.5,-0.25\n4,1,0\n");

  std::ostringstream strided;
  write_samples_csv(strided, {{1.0}, {0.5}}, 105, 5);
  CHECK(strided.str() == "sweep,m_1\n105,1\n110,0.5\n");
}

TEST_CASE("binary frame is raw row-major doubles") {
  std::ostringstream os;
  write_samples_bin(os, {{0.5, -0.25}, {1.0, 0.0}});
  const std::string raw = os.str();
  REQUIRE(raw.size() == 4 * sizeof(double));
  double values[4];
  std::memcpy(values, raw.data(), sizeof(values));
  CHECK(values[0] == 0.5);
  CHECK(values[1] == -0.25);
  CHECK(values[2] == 1.0);
  CHECK(values[3] == 0.0);
}

TEST_CASE("SVG heatmap is deterministic and clamps to the fixed scale") {
  const std::vector<std::vector<double>> grid = {{-1.0, 0.0}, {0.5, 2.0}};
  const std::string a = render_heatmap_svg(grid);
  const std::string b = render_heatmap_svg(grid);
  CHECK(a == b);
  CHECK(a.find("<svg") == 0);
  std::size_t rects = 0;
  for (std::size_t pos = a.find("<rect"); pos != std::string::npos;
       pos = a.find("<rect", pos + 1))
    ++rects;
  CHECK(rects == 4);
  // out-of-range value clamps to the saturated end of the scale
  CHECK(a.find("rgb(178,24,43)") != std::string::npos);
  CHECK(a.find("rgb(33,102,172)") != std::string::npos);
  CHECK_THROWS(render_heatmap_svg({}));
}
