#pragma once

#include <json.hpp>

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "pshlab/model.hpp"
#include "pshlab/psh_search.hpp"

namespace pshlab {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CurveConfig {
  std::vector<std::string> family{"sector", "z_half", "z_3half", "z_squared",
                                  "cubic"};
  double radius = 1.0;
  std::vector<double> s_values{0.05, 0.025, 0.0125};
  double B_radius = 0.1;
  int t_points = 20;
  double quad_target = 1e-8;
  double K_cap = 2.0;
  ModelParams model;  // parameters of h along the curves (n = 1 model)
};

struct GridConfig {
  int lemma_points = 10000;
  int variety_points = 100;
  GridSpec feasibility;
};

struct RunConfig {
  ModelParams model;
  std::vector<std::string> suites{"lemmas", "counterexample", "construction",
                                  "constants", "curves"};
  GridConfig grids;
  std::uint64_t seed = 20260801;
  CurveConfig curves;
  std::string out_dir;
  std::string baselines_path;
  bool quiet = false;
  int points_override = -1;  // --points N caps sweep sizes for smoke runs
  std::string config_hash = "default";
};

RunConfig default_config();

/// Strict parse: unknown keys anywhere are rejected.
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config_file(const std::string& path);

/// Pinned regression baselines for searched constants; compared at 10%.
struct Baselines {
  // keyed "n<k>" e.g. "2,0" -> D_star; "2,0,r0.5" -> C0_star etc.
  std::map<std::string, double> values;
  bool loaded = false;
};

Baselines load_baselines(const std::string& path);

}  // namespace pshlab
