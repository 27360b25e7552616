#pragma once

#include <string>
#include <vector>

namespace blockspin {

// Static SVG heatmap of a rows x cols value grid on a diverging color scale
// with the range pinned to [lo, hi] (blue - white - red). Element order is
// row-major, so output bytes are a pure function of the input.
std::string render_heatmap_svg(const std::vector<std::vector<double>>& rows,
                               double lo = -1.0, double hi = 1.0,
                               int cell_width = 4, int cell_height = 12,
                               const std::string& title = "");

}  // namespace blockspin
