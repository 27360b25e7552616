#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "blockspin/parallel.hpp"
#include "blockspin/report.hpp"

namespace blockspin::acceptance {

struct Options {
  std::uint64_t seed = 20250801;
  int threads = default_threads();
  std::string out_dir;  // when set, experiment reports land here as JSON
};

struct CheckResult {
  std::string name;
  VerdictStatus status = VerdictStatus::fail;
  std::string detail;
};

struct SuiteResult {
  std::string suite;
  std::vector<CheckResult> checks;
  std::vector<ExperimentReport> reports;
  double runtime_s = 0.0;

  bool all_pass() const;
};

// closed-forms | oracle | lln | clt | chain | all
//   closed-forms: spectra, inverses, Poisson identity, landscape calculus
//   oracle:       enumeration equivalences and sampler exactness
//   lln / clt:    the statistical reproductions of the limit theorems
//   chain:        fixed-block-size transfer-matrix checks
const std::vector<std::string>& suite_names();
SuiteResult run_suite(const std::string& name, const Options& options);

// one line per check: "[PASS|FAIL] name - detail"
void print_suite(const SuiteResult& result, std::ostream& os);

}  // namespace blockspin::acceptance
