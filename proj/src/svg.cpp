#include "blockspin/svg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace blockspin {

namespace {

struct Rgb {
  int r, g, b;
};

// diverging blue (-1) / white (0) / red (+1)
Rgb diverging_color(double t) {
  t = std::clamp(t, -1.0, 1.0);
  auto lerp = [](int a, int b, double u) {
    return static_cast<int>(std::lround(a + (b - a) * u));
  };
  const Rgb blue{33, 102, 172}, white{247, 247, 247}, red{178, 24, 43};
  if (t < 0.0) return {lerp(white.r, blue.r, -t), lerp(white.g, blue.g, -t),
                       lerp(white.b, blue.b, -t)};
  return {lerp(white.r, red.r, t), lerp(white.g, red.g, t), lerp(white.b, red.b, t)};
}

}  // namespace

std::string render_heatmap_svg(const std::vector<std::vector<double>>& rows, double lo,
                               double hi, int cell_width, int cell_height,
                               const std::string& title) {
  if (rows.empty() || rows.front().empty())
    throw std::invalid_argument("heatmap needs a non-empty grid");
  if (!(hi > lo)) throw std::invalid_argument("heatmap needs hi > lo");
  const int n_rows = static_cast<int>(rows.size());
  const int n_cols = static_cast<int>(rows.front().size());
  const int top = title.empty() ? 0 : 18;
  const int width = n_cols * cell_width;
  const int height = n_rows * cell_height + top;

  std::string svg;
  svg.reserve(static_cast<std::size_t>(n_rows) * n_cols * 64 + 256);
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(width) + "\" height=\"" + std::to_string(height) + "\">\n";
  if (!title.empty())
    svg += "<text x=\"2\" y=\"13\" font-family=\"monospace\" font-size=\"12\">" +
           title + "</text>\n";
  for (int i = 0; i < n_rows; ++i) {
    if (static_cast<int>(rows[i].size()) != n_cols)
      throw std::invalid_argument("heatmap rows must have equal length");
    for (int j = 0; j < n_cols; ++j) {
      const double t = 2.0 * (rows[i][j] - lo) / (hi - lo) - 1.0;
      const Rgb c = diverging_color(t);
      svg += "<rect x=\"" + std::to_string(j * cell_width) + "\" y=\"" +
             std::to_string(top + i * cell_height) + "\" width=\"" +
             std::to_string(cell_width) + "\" height=\"" + std::to_string(cell_height) +
             "\" fill=\"rgb(" + std::to_string(c.r) + "," + std::to_string(c.g) + "," +
             std::to_string(c.b) + ")\"/>\n";
    }
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace blockspin
