#pragma once

#include <json.hpp>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace pshlab {

enum class CheckStatus { Pass, Fail, Flagged };
const char* to_string(CheckStatus s);

struct CheckRecord {
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  std::string metric_name;  // "residual", "min_eig", "estimate", ...
  double metric = 0.0;
  std::vector<double> witness;
  std::string note;
};

struct Provenance {
  std::string config_hash;
  std::uint64_t seed = 0;
  std::map<std::string, std::int64_t> grid_sizes;
};

/// Structured pass/fail record for one suite. Overall status fails iff a
/// hard (non-flagged) check fails.
struct VerificationReport {
  std::string suite;
  std::vector<CheckRecord> checks;
  std::map<std::string, double> constants;
  Provenance provenance;

  void add(CheckRecord rec);
  void add_pass_fail(const std::string& name, bool ok,
                     const std::string& metric_name, double metric,
                     std::vector<double> witness = {}, std::string note = {});
  void add_flagged(const std::string& name, const std::string& metric_name,
                   double metric, std::string note = {});
  bool overall_pass() const;
  nlohmann::json to_json() const;
};

/// Number formatting used in reports and CSV; fixed so that identical runs
/// produce byte-identical files.
std::string format_double(double v);

}  // namespace pshlab
