#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "pshlab/suites.hpp"

namespace {

struct CliOptions {
  std::string config_path;
  std::string out_dir;
  int points = -1;
  long long seed = -1;
  bool quiet = false;
};

void print_report(const pshlab::VerificationReport& rep, bool quiet) {
  if (!quiet) {
    for (const auto& c : rep.checks) {
      std::printf("%-56s %-8s %s=%s\n", c.name.c_str(),
                  pshlab::to_string(c.status), c.metric_name.c_str(),
                  pshlab::format_double(c.metric).c_str());
    }
  }
  std::printf("[%s] %s\n", rep.overall_pass() ? "PASS" : "FAIL",
              rep.suite.c_str());
}

void write_outputs(const pshlab::VerificationReport& rep,
                   const std::string& out_dir, const std::string& extra_name,
                   const std::string& extra_content) {
  if (out_dir.empty()) return;
  std::filesystem::create_directories(out_dir);
  std::ofstream json_out(out_dir + "/" + rep.suite + ".json");
  json_out << rep.to_json().dump(2) << "\n";
  if (!extra_name.empty()) {
    std::ofstream extra(out_dir + "/" + extra_name);
    extra << extra_content;
  }
}

int run_suites(const std::vector<std::string>& suites,
               const pshlab::RunConfig& cfg) {
  bool all_pass = true;
  for (const auto& suite : suites) {
    if (suite == "lemmas") {
      const auto rep = pshlab::run_lemmas_suite(cfg);
      print_report(rep, cfg.quiet);
      write_outputs(rep, cfg.out_dir, "", "");
      all_pass = all_pass && rep.overall_pass();
    } else if (suite == "counterexample") {
      const auto rep = pshlab::run_counterexample_suite(cfg);
      print_report(rep, cfg.quiet);
      write_outputs(rep, cfg.out_dir, "", "");
      all_pass = all_pass && rep.overall_pass();
    } else if (suite == "construction") {
      const auto rep = pshlab::run_construction_suite(cfg);
      print_report(rep, cfg.quiet);
      write_outputs(rep, cfg.out_dir, "", "");
      all_pass = all_pass && rep.overall_pass();
    } else if (suite == "constants") {
      const auto rep = pshlab::run_constants_suite(cfg);
      print_report(rep, cfg.quiet);
      write_outputs(rep, cfg.out_dir, "", "");
      all_pass = all_pass && rep.overall_pass();
    } else if (suite == "curves") {
      const auto out = pshlab::run_curves_suite(cfg);
      print_report(out.report, cfg.quiet);
      write_outputs(out.report, cfg.out_dir, "curves.csv", out.csv);
      all_pass = all_pass && out.report.overall_pass();
    }
  }
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"psh-lab: numerical verification lab for plurisubharmonic "
               "interpolants and reverse isoperimetric estimates"};
  app.require_subcommand(1);

  CliOptions opt;
  for (const char* name :
       {"verify-lemmas", "counterexample", "constants", "curves", "all"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", opt.config_path, "JSON config path");
    sub->add_option("--points", opt.points, "cap sweep point counts");
    sub->add_option("--seed", opt.seed, "override RNG seed");
    sub->add_option("--out", opt.out_dir, "output directory for reports");
    sub->add_flag("--quiet", opt.quiet, "print only the summary lines");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  pshlab::RunConfig cfg;
  try {
    cfg = opt.config_path.empty() ? pshlab::default_config()
                                  : pshlab::load_config_file(opt.config_path);
    if (opt.points > 0) cfg.points_override = opt.points;
    if (opt.seed >= 0) cfg.seed = static_cast<std::uint64_t>(opt.seed);
    if (!opt.out_dir.empty()) cfg.out_dir = opt.out_dir;
    cfg.quiet = opt.quiet;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }

  std::vector<std::string> suites;
  const std::string sub = app.get_subcommands().front()->get_name();
  if (sub == "verify-lemmas") suites = {"lemmas"};
  else if (sub == "counterexample") suites = {"counterexample"};
  else if (sub == "constants") suites = {"construction", "constants"};
  else if (sub == "curves") suites = {"curves"};
  else suites = cfg.suites;

  try {
    return run_suites(suites, cfg);
  } catch (const pshlab::ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
