#include "blockspin/io.hpp"

#include <bit>
#include <charconv>
#include <cstring>
#include <ostream>
#include <stdexcept>

namespace blockspin {

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) throw std::runtime_error("format_double failed");
  return std::string(buf, ptr);
}

void write_samples_csv(std::ostream& os, const std::vector<MagnetizationVector>& samples,
                       int first_sweep_index, int stride) {
  if (samples.empty()) {
    os << "sweep\n";
    return;
  }
  os << "sweep";
  for (std::size_t k = 1; k <= samples.front().size(); ++k) os << ",m_" << k;
  os << "\n";
  for (std::size_t i = 0; i < samples.size(); ++i) {
    os << (first_sweep_index + static_cast<int>(i) * stride);
    for (double v : samples[i]) os << "," << format_double(v);
    os << "\n";
  }
}

void write_samples_bin(std::ostream& os, const std::vector<MagnetizationVector>& samples) {
  static_assert(std::endian::native == std::endian::little,
                "binary sample frames are little-endian");
  for (const auto& row : samples) {
    os.write(reinterpret_cast<const char*>(row.data()),
             static_cast<std::streamsize>(row.size() * sizeof(double)));
  }
}

}  // namespace blockspin
