#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "blockspin/model.hpp"

namespace blockspin {

enum class VerdictStatus { pass, fail, inconclusive };

struct Verdict {
  std::string name;
  VerdictStatus status = VerdictStatus::fail;
  std::string detail;  // cites the tolerance it was judged against
};

struct Estimate {
  double value = 0.0;
  double se = 0.0;
};

// Serializable record of one experiment: estimates with standard errors,
// analytic reference values, pass/fail verdicts, seeds and timing.
struct ExperimentReport {
  std::string experiment;
  ModelParams params;
  std::vector<std::uint64_t> seeds;
  std::map<std::string, Estimate> estimates;
  std::map<std::string, double> references;
  std::vector<Verdict> verdicts;
  double runtime_s = 0.0;

  bool all_pass() const;
  nlohmann::json to_json() const;
  void add_verdict(const std::string& name, bool pass, const std::string& detail);
};

std::string to_string(VerdictStatus status);
nlohmann::json params_to_json(const ModelParams& params);

}  // namespace blockspin
