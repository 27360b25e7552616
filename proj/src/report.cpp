#include "blockspin/report.hpp"

#include "blockspin/version.hpp"

namespace blockspin {

std::string to_string(VerdictStatus status) {
  switch (status) {
    case VerdictStatus::pass: return "pass";
    case VerdictStatus::fail: return "fail";
    case VerdictStatus::inconclusive: return "inconclusive";
  }
  return "unknown";
}

bool ExperimentReport::all_pass() const {
  for (const auto& v : verdicts)
    if (v.status != VerdictStatus::pass) return false;
  return true;
}

void ExperimentReport::add_verdict(const std::string& name, bool pass,
                                   const std::string& detail) {
  verdicts.push_back({name, pass ? VerdictStatus::pass : VerdictStatus::fail, detail});
}

nlohmann::json params_to_json(const ModelParams& params) {
  return {{"beta", params.beta},
          {"alpha", params.alpha},
          {"n_spins", params.n_spins},
          {"n_blocks", params.n_blocks},
          {"mode", params.mode == ParamMode::strict ? "strict" : "relaxed"}};
}

nlohmann::json ExperimentReport::to_json() const {
  nlohmann::json j;
  j["experiment"] = experiment;
  j["version"] = kVersion;
  j["params"] = params_to_json(params);
  j["seeds"] = seeds;
  nlohmann::json est = nlohmann::json::object();
  for (const auto& [name, e] : estimates)
    est[name] = {{"value", e.value}, {"se", e.se}};
  j["estimates"] = est;
  j["references"] = references;
  nlohmann::json verd = nlohmann::json::array();
  for (const auto& v : verdicts)
    verd.push_back({{"name", v.name}, {"status", to_string(v.status)}, {"detail", v.detail}});
  j["verdicts"] = verd;
  j["runtime_s"] = runtime_s;
  return j;
}

}  // namespace blockspin
