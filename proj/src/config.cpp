#include "pshlab/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "pshlab/rng.hpp"

namespace pshlab {

namespace {

void reject_unknown(const nlohmann::json& j, const std::set<std::string>& allowed,
                    const std::string& scope) {
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (!allowed.count(key))
      throw ConfigError("config: unknown key '" + key + "' in " + scope);
  }
}

ModelParams parse_model(const nlohmann::json& j, const std::string& scope,
                        ModelParams base) {
  reject_unknown(j, {"n", "k", "r", "D", "C0", "s", "eps_tube"}, scope);
  ModelParams m = base;
  if (j.contains("n")) m.n = j.at("n").get<int>();
  if (j.contains("k")) m.k = j.at("k").get<int>();
  if (j.contains("r")) m.r = j.at("r").get<double>();
  if (j.contains("D")) m.D = j.at("D").get<double>();
  if (j.contains("C0")) m.C0 = j.at("C0").get<double>();
  if (j.contains("s")) m.s = j.at("s").get<double>();
  if (j.contains("eps_tube")) m.eps_tube = j.at("eps_tube").get<double>();
  try {
    m = m.normalized();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return m;
}

}  // namespace

RunConfig default_config() {
  RunConfig cfg;
  cfg.model.n = 2;
  cfg.model.k = 0;
  cfg.model.r = 0.5;
  cfg.model.D = 0.1;
  cfg.model.C0 = 12.0;
  cfg.model.s = 0.004;

  cfg.curves.model.n = 1;
  cfg.curves.model.k = 0;
  cfg.curves.model.r = 2.0;
  cfg.curves.model.D = 0.1;
  cfg.curves.model.C0 = 12.0;
  cfg.curves.model.s = 0.01;
  return cfg;
}

RunConfig parse_config(const nlohmann::json& j) {
  RunConfig cfg = default_config();
  reject_unknown(j,
                 {"model", "suites", "grids", "seed", "curves", "output",
                  "baselines"},
                 "top level");
  if (j.contains("model")) cfg.model = parse_model(j.at("model"), "model", cfg.model);
  if (j.contains("suites")) {
    cfg.suites.clear();
    const std::set<std::string> known{"lemmas", "counterexample",
                                      "construction", "constants", "curves"};
    for (const auto& s : j.at("suites")) {
      const std::string name = s.get<std::string>();
      if (!known.count(name))
        throw ConfigError("config: unknown suite '" + name + "'");
      cfg.suites.push_back(name);
    }
  }
  if (j.contains("grids")) {
    const auto& g = j.at("grids");
    reject_unknown(g,
                   {"lemma_points", "variety_points", "feasibility_radial",
                    "feasibility_transverse", "feasibility_directions"},
                   "grids");
    if (g.contains("lemma_points"))
      cfg.grids.lemma_points = g.at("lemma_points").get<int>();
    if (g.contains("variety_points"))
      cfg.grids.variety_points = g.at("variety_points").get<int>();
    if (g.contains("feasibility_radial"))
      cfg.grids.feasibility.radial = g.at("feasibility_radial").get<int>();
    if (g.contains("feasibility_transverse"))
      cfg.grids.feasibility.transverse =
          g.at("feasibility_transverse").get<int>();
    if (g.contains("feasibility_directions"))
      cfg.grids.feasibility.directions =
          g.at("feasibility_directions").get<int>();
    if (cfg.grids.lemma_points < 1 || cfg.grids.variety_points < 1)
      throw ConfigError("config: point counts must be >= 1");
  }
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("curves")) {
    const auto& c = j.at("curves");
    reject_unknown(c,
                   {"family", "radius", "s_values", "B_radius", "t_points",
                    "quad_target", "K_cap", "model"},
                   "curves");
    if (c.contains("family")) {
      cfg.curves.family.clear();
      for (const auto& f : c.at("family"))
        cfg.curves.family.push_back(f.get<std::string>());
      if (cfg.curves.family.empty())
        throw ConfigError("config: curve family must not be empty");
    }
    if (c.contains("radius")) cfg.curves.radius = c.at("radius").get<double>();
    if (c.contains("s_values")) {
      cfg.curves.s_values.clear();
      for (const auto& s : c.at("s_values"))
        cfg.curves.s_values.push_back(s.get<double>());
    }
    if (c.contains("B_radius"))
      cfg.curves.B_radius = c.at("B_radius").get<double>();
    if (c.contains("t_points"))
      cfg.curves.t_points = c.at("t_points").get<int>();
    if (c.contains("quad_target"))
      cfg.curves.quad_target = c.at("quad_target").get<double>();
    if (c.contains("K_cap")) cfg.curves.K_cap = c.at("K_cap").get<double>();
    if (c.contains("model"))
      cfg.curves.model =
          parse_model(c.at("model"), "curves.model", cfg.curves.model);
    for (double s : cfg.curves.s_values)
      if (!(s > 0.0 && s < cfg.curves.model.D * cfg.curves.model.r))
        throw ConfigError(
            "config: curve s values must lie in (0, D*r) of the curve model");
  }
  if (j.contains("output")) {
    const auto& o = j.at("output");
    reject_unknown(o, {"dir"}, "output");
    if (o.contains("dir")) cfg.out_dir = o.at("dir").get<std::string>();
  }
  if (j.contains("baselines"))
    cfg.baselines_path = j.at("baselines").get<std::string>();
  return cfg;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config: JSON parse error: ") + e.what());
  }
  RunConfig cfg = parse_config(j);
  char hash[20];
  std::snprintf(hash, sizeof(hash), "%016llx",
                static_cast<unsigned long long>(fnv1a(text)));
  cfg.config_hash = hash;
  return cfg;
}

Baselines load_baselines(const std::string& path) {
  Baselines b;
  std::ifstream in(path);
  if (!in) return b;
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error&) {
    return b;
  }
  for (const auto& [key, value] : j.items())
    b.values[key] = value.get<double>();
  b.loaded = true;
  return b;
}

}  // namespace pshlab
