// Acceptance suite runner: one pass/fail line per criterion check.
// Usage: acceptance [suite] [seed] — suite defaults to "all".

#include <cstdlib>
#include <iostream>
#include <string>

#include "blockspin/acceptance.hpp"

int main(int argc, char** argv) {
  const std::string suite = argc > 1 ? argv[1] : "all";
  blockspin::acceptance::Options options;
  if (argc > 2) options.seed = std::strtoull(argv[2], nullptr, 10);
  if (const char* dir = std::getenv("BLOCKSPIN_REPORT_DIR")) options.out_dir = dir;

  try {
    const auto result = blockspin::acceptance::run_suite(suite, options);
    blockspin::acceptance::print_suite(result, std::cout);
    return result.all_pass() ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
