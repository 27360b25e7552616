#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "blockspin/model.hpp"

namespace blockspin {

// shortest round-trip decimal representation, '.' decimal point on every
// platform (std::to_chars, no locale involvement)
std::string format_double(double v);

// CSV with a header row and '\n' line endings: header (sweep, m_1..m_s),
// one row per sample; row i carries sweep index first + i * stride
void write_samples_csv(std::ostream& os, const std::vector<MagnetizationVector>& samples,
                       int first_sweep_index = 0, int stride = 1);

// compact binary frame: little-endian 64-bit floats, row-major, one row per
// sample (dimensions travel in the echoed run configuration)
void write_samples_bin(std::ostream& os, const std::vector<MagnetizationVector>& samples);

}  // namespace blockspin
