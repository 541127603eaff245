#include "pshlab/report.hpp"

#include <cstdio>

namespace pshlab {

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Flagged: return "flagged";
  }
  return "?";
}

void VerificationReport::add(CheckRecord rec) { checks.push_back(std::move(rec)); }

void VerificationReport::add_pass_fail(const std::string& name, bool ok,
                                       const std::string& metric_name,
                                       double metric,
                                       std::vector<double> witness,
                                       std::string note) {
  checks.push_back({name, ok ? CheckStatus::Pass : CheckStatus::Fail,
                    metric_name, metric, std::move(witness), std::move(note)});
}

void VerificationReport::add_flagged(const std::string& name,
                                     const std::string& metric_name,
                                     double metric, std::string note) {
  checks.push_back(
      {name, CheckStatus::Flagged, metric_name, metric, {}, std::move(note)});
}

bool VerificationReport::overall_pass() const {
  for (const auto& c : checks)
    if (c.status == CheckStatus::Fail) return false;
  return true;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json j;
  j["suite"] = suite;
  j["overall"] = overall_pass() ? "pass" : "fail";
  nlohmann::json jc = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::json r;
    r["name"] = c.name;
    r["status"] = to_string(c.status);
    r["metric_name"] = c.metric_name;
    // Serialized through the fixed text format to keep reports byte-stable.
    r["metric"] = format_double(c.metric);
    if (!c.witness.empty()) {
      nlohmann::json w = nlohmann::json::array();
      for (double x : c.witness) w.push_back(format_double(x));
      r["witness"] = w;
    }
    if (!c.note.empty()) r["note"] = c.note;
    jc.push_back(r);
  }
  j["checks"] = jc;
  nlohmann::json kc;
  for (const auto& [name, value] : constants) kc[name] = format_double(value);
  j["constants"] = kc;
  j["provenance"] = {
      {"config_hash", provenance.config_hash},
      {"seed", provenance.seed},
      {"grid_sizes", provenance.grid_sizes},
  };
  return j;
}

}  // namespace pshlab
