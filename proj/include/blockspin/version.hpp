#pragma once

namespace blockspin {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace blockspin
