#include "pshlab/suites.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>

#include "pshlab/curves.hpp"
#include "pshlab/levi_analysis.hpp"
#include "pshlab/psh_search.hpp"
#include "pshlab/rng.hpp"

namespace pshlab {

namespace {

constexpr double kEigenResidualTol = 1e-8;

std::string nk_tag(int n, int k) {
  return "n" + std::to_string(n) + "k" + std::to_string(k);
}

std::string r_tag(double r) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "r=%g", r);
  return buf;
}

int effective_points(const RunConfig& cfg, int base) {
  return cfg.points_override > 0 ? std::min(cfg.points_override, base) : base;
}

Point sample_off_tube(Rng& rng, int n, int k, double half_width,
                      double margin) {
  while (true) {
    const Point p = Point::from_flat(rng.box_vector(2 * n, half_width));
    if (std::sqrt(rho1_value(p)) >= margin &&
        std::sqrt(rho2_value(p, k)) >= margin)
      return p;
  }
}

Provenance make_provenance(const RunConfig& cfg) {
  Provenance prov;
  prov.config_hash = cfg.config_hash;
  prov.seed = cfg.seed;
  prov.grid_sizes = {
      {"lemma_points", effective_points(cfg, cfg.grids.lemma_points)},
      {"variety_points", effective_points(cfg, cfg.grids.variety_points)},
      {"feasibility_radial", cfg.grids.feasibility.radial},
      {"feasibility_transverse", cfg.grids.feasibility.transverse},
      {"feasibility_directions", cfg.grids.feasibility.directions},
  };
  return prov;
}

}  // namespace

VerificationReport run_lemmas_suite(const RunConfig& cfg) {
  VerificationReport rep;
  rep.suite = "lemmas";
  rep.provenance = make_provenance(cfg);
  const int points = effective_points(cfg, cfg.grids.lemma_points);
  const int vpoints = effective_points(cfg, cfg.grids.variety_points);

  for (int n = 1; n <= 4; ++n) {
    for (int k = 0; k <= n; ++k) {
      const std::string tag = nk_tag(n, k);
      Rng rng(cfg.seed ^ fnv1a("lemmas:" + tag));
      double worst_m0 = 0.0, worst_m1 = 0.0, worst_rank = 0.0, worst_eq = 0.0;
      for (int i = 0; i < points; ++i) {
        const Point p = sample_off_tube(rng, n, k, 1.5, 1e-3);
        const auto m0 = verify_sqrt_levi_eigenstructure(p, n, k);
        worst_m0 = std::max(worst_m0, m0.max_residual);
        const auto m1 = verify_grad_form_eigenstructure(p, n, k);
        worst_m1 = std::max(worst_m1, m1.max_residual);
        if (2 * n > 2) {
          const LeviMatrix M1 =
              grad_form_matrix(sqrt_prod_rho_field(n, k), p);
          Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
              M1.m, Eigen::EigenvaluesOnly);
          const Eigen::VectorXd ev = es.eigenvalues();
          const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
          worst_rank = std::max(worst_rank, ev(2 * n - 3) / scale);
        }
        worst_eq = std::max(worst_eq, product_rule_residual(p, n, k));
      }
      rep.add_pass_fail("sqrt_levi_eigenstructure[" + tag + "]",
                        worst_m0 <= kEigenResidualTol, "max_residual",
                        worst_m0);
      rep.add_pass_fail("grad_form_eigenstructure[" + tag + "]",
                        worst_m1 <= kEigenResidualTol, "max_residual",
                        worst_m1);
      if (2 * n > 2)
        rep.add_pass_fail("grad_form_rank_le_2[" + tag + "]",
                          worst_rank <= kEigenResidualTol,
                          "third_eigenvalue_rel", worst_rank);
      rep.add_pass_fail("product_rule_identity[" + tag + "]",
                        worst_eq <= kEigenResidualTol, "max_residual",
                        worst_eq);

      const ProductPshReport psh = verify_product_psh(
          n, k, std::min(points, 2000), vpoints, vpoints, 0.1,
          cfg.seed ^ fnv1a("psh:" + tag));
      rep.add_pass_fail("sqrt_prod_weakly_psh[" + tag + "]", psh.sqrt_psh_ok,
                        "min_eig_rel", psh.sqrt_min_eig_rel);
      rep.add_pass_fail("prod_degenerate_on_variety[" + tag + "]",
                        psh.degenerate_on_v, "max_abs_eig_rel",
                        psh.on_v_max_abs_eig);
      rep.add_pass_fail("prod_positive_off_variety[" + tag + "]",
                        psh.positive_off_v, "min_eig", psh.off_v_min_eig);
    }
  }
  return rep;
}

VerificationReport run_counterexample_suite(const RunConfig& cfg) {
  VerificationReport rep;
  rep.suite = "counterexample";
  rep.provenance = make_provenance(cfg);

  const CutoffProfile expc = exp_reciprocal_cutoff();
  const CutoffScanResult scan = scan_cutoff_model(expc);
  rep.add_pass_fail("cutoff_model_not_psh[exp(-1/t)]", scan.negativity_found,
                    "min_eig", scan.min_eig, {scan.worst.x(0), scan.worst.x(1),
                    scan.worst.y(0), scan.worst.y(1)});
  rep.add_pass_fail("deficiency_negative_at_witness[exp(-1/t)]",
                    scan.deficiency_negative, "deficiency",
                    scan.deficiency_at_witness);

  // Restriction to the slice y = (0, 1).
  {
    const ScalarField f = cutoff_model_field(2, expc);
    double min_eig = std::numeric_limits<double>::infinity();
    double witness_x1 = 0.0;
    for (int i = 1; i <= 64; ++i) {
      const double x1 = static_cast<double>(i) / 65.0;
      Eigen::VectorXd x(2), y(2);
      x << x1, 0.0;
      y << 0.0, 1.0;
      const double ev = min_eigenvalue(levi_matrix(f, Point(x, y)));
      if (ev < min_eig) {
        min_eig = ev;
        witness_x1 = x1;
      }
    }
    rep.add_pass_fail("cutoff_model_not_psh_on_slice[y=(0,1)]",
                      min_eig <= -1e-6, "min_eig", min_eig, {witness_x1});
  }

  // On y = 0 the model vanishes to second order and stays psd.
  {
    const ScalarField f = cutoff_model_field(2, expc);
    double worst = std::numeric_limits<double>::infinity();
    for (int i = 1; i <= 16; ++i) {
      Eigen::VectorXd x(2), y(2);
      x << static_cast<double>(i) / 17.0, 0.0;
      y << 0.0, 0.0;
      const LeviMatrix M = levi_matrix(f, Point(x, y));
      worst = std::min(worst, min_eigenvalue(M) /
                                  std::max(1.0, spectral_radius(M)));
    }
    rep.add_pass_fail("cutoff_model_psd_on_y0_slice", worst >= -kPsdTolRel,
                      "min_eig_rel", worst);
  }

  // Exploratory: the interpolation cutoff itself; recorded, not asserted.
  {
    const CutoffScanResult chi_scan = scan_cutoff_model(chi_cutoff());
    rep.add_flagged("cutoff_model_scan[chi]", "min_eig", chi_scan.min_eig,
                    chi_scan.min_eig < 0.0 ? "negativity found"
                                           : "no negativity found");
  }
  return rep;
}

namespace {

struct ConstructionScope {
  std::vector<std::pair<int, int>> nk_pairs{{1, 0}, {1, 1}, {2, 0}, {2, 1}};
  std::vector<double> condition_radii{0.5, 0.1};
  std::vector<double> sweep_radii{0.4, 0.2, 0.1, 0.05};
  std::vector<double> scaling_radii{0.3, 0.1, 0.03};
};

GridSpec effective_grid(const RunConfig& cfg) {
  GridSpec g = cfg.grids.feasibility;
  if (cfg.points_override > 0) {
    const double f = std::sqrt(
        std::max(0.02, cfg.points_override / 10000.0));
    g = g.scaled(f);
  }
  return g;
}

}  // namespace

VerificationReport run_construction_suite(const RunConfig& cfg) {
  VerificationReport rep;
  rep.suite = "construction";
  rep.provenance = make_provenance(cfg);
  const ConstructionScope scope;
  const GridSpec grid = effective_grid(cfg);

  for (const auto& [n, k] : scope.nk_pairs) {
    const std::string tag = nk_tag(n, k);
    const std::uint64_t seed = cfg.seed ^ fnv1a("construction:" + tag);

    const SearchDResult dres = search_D(n, k, grid, seed);
    rep.add_pass_fail("search_D_feasible[" + tag + "]",
                      dres.found && dres.D_star >= 1e-2, "D_star",
                      dres.D_star);
    rep.add_pass_fail("search_D_monotone[" + tag + "]", dres.monotone_ok,
                      "schedule_points",
                      static_cast<double>(dres.schedule.size()));
    rep.constants["D_star[" + tag + "]"] = dres.D_star;
    if (!dres.found) continue;

    {
      const FeasibilityResult feas =
          beta1_psd_on_tubes(n, k, dres.D_star, grid, seed);
      rep.add_pass_fail("beta1_psd_at_D_star[" + tag + "]", feas.feasible,
                        "min_eig_rel", feas.min_eig_rel);
    }

    {
      Rng rng(seed + 99);
      double worst = 0.0;
      for (double r : scope.scaling_radii) {
        for (int i = 0; i < 100; ++i) {
          const Point p = Point::from_flat(rng.box_vector(2 * n, 1.2 * r));
          worst = std::max(worst, beta_scaling_residual(p, r, n, k));
        }
      }
      rep.add_pass_fail("beta_scaling_identity[" + tag + "]", worst <= 1e-9,
                        "max_residual", worst);
    }

    for (double r : scope.condition_radii) {
      const double D_run = 0.5 * dres.D_star;
      const SearchC0Result c0res = search_C0(r, D_run, n, k, grid, seed);
      rep.add_pass_fail("search_C0[" + tag + "," + r_tag(r) + "]",
                        c0res.feasible && c0res.bracket_ok, "C0_star",
                        c0res.C0_star);
      rep.constants["C0_star[" + tag + "," + r_tag(r) + "]"] = c0res.C0_star;
      if (!c0res.feasible) continue;

      ModelParams prm;
      prm.n = n;
      prm.k = k;
      prm.r = r;
      prm.D = D_run;
      prm.C0 = 2.0 * c0res.C0_star;
      prm.s = 0.1 * D_run * r;
      const HConditionsReport cond = verify_h_conditions(prm, grid, seed);
      const std::string where = "[" + tag + "," + r_tag(r) + "]";
      rep.add_pass_fail("h_vanishes_on_planes" + where, cond.vanish_ok,
                        "max_plane_value", 0.0);
      rep.add_pass_fail("sqrt_h_weakly_psh" + where, cond.sqrt_psh_ok,
                        "min_eig_rel", cond.sqrt_min_eig_rel);
      rep.add_pass_fail("h_strictly_psh_outside_Br" + where,
                        cond.strict_psh_ok, "min_eig", cond.strict_min_eig);
      rep.add_pass_fail("h_constants_finite" + where, cond.all_pass,
                        "C2", cond.C2);
      rep.constants["C1" + where] = cond.C1;
      rep.constants["C2" + where] = cond.C2;
      rep.constants["A1" + where] = cond.A1;
    }
  }

  // r-independence of C0* and of the collar domination constant.
  for (const auto& [n, k] : {std::pair<int, int>{1, 0}, {2, 0}}) {
    const std::string tag = nk_tag(n, k);
    const std::uint64_t seed = cfg.seed ^ fnv1a("rsweep:" + tag);
    const double D_star = rep.constants.count("D_star[" + tag + "]")
                              ? rep.constants["D_star[" + tag + "]"]
                              : 0.0;
    if (D_star <= 0.0) continue;
    const double D_run = 0.5 * D_star;
    const auto sweep = c0_r_sweep(scope.sweep_radii, D_run, n, k, grid, seed);
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    bool all_ok = true;
    for (const auto& [r, c0] : sweep) {
      if (!std::isfinite(c0)) {
        all_ok = false;
        continue;
      }
      rep.constants["C0_star_sweep[" + tag + "," + r_tag(r) + "]"] = c0;
      lo = std::min(lo, c0);
      hi = std::max(hi, c0);
    }
    const double ratio = (lo > 0.0) ? hi / lo : (hi == 0.0 ? 1.0 : hi / 1e-12);
    rep.add_pass_fail("C0_star_r_independent[" + tag + "]",
                      all_ok && ratio <= 2.0, "max_over_min", ratio);

    const double C0_fixed = 2.0 * sweep.front().second;
    double c1p_lo = std::numeric_limits<double>::infinity(), c1p_hi = 0.0;
    bool collar_ok = true;
    for (double r : scope.sweep_radii) {
      ModelParams prm;
      prm.n = n;
      prm.k = k;
      prm.r = r;
      prm.D = D_run;
      prm.C0 = std::isfinite(C0_fixed) ? C0_fixed : 0.0;
      prm.s = 0.1 * D_run * r;
      const CollarMetricReport cm = verify_collar_metric(prm, grid, seed);
      rep.constants["C1p[" + tag + "," + r_tag(r) + "]"] = cm.C1p;
      rep.constants["C2p[" + tag + "," + r_tag(r) + "]"] = cm.C2p;
      collar_ok = collar_ok && cm.min_eig_outside > 0.0;
      c1p_lo = std::min(c1p_lo, cm.C1p);
      c1p_hi = std::max(c1p_hi, cm.C1p);
    }
    rep.add_pass_fail("collar_C1p_r_independent[" + tag + "]",
                      collar_ok && c1p_hi / c1p_lo <= 2.0, "max_over_min",
                      c1p_hi / c1p_lo);
  }
  return rep;
}

VerificationReport run_constants_suite(const RunConfig& cfg) {
  VerificationReport rep;
  rep.suite = "constants";
  rep.provenance = make_provenance(cfg);
  const GridSpec grid = effective_grid(cfg);
  const int n = cfg.model.n, k = cfg.model.k;
  const std::string tag = nk_tag(n, k);
  const std::uint64_t seed = cfg.seed ^ fnv1a("constants:" + tag);

  const SearchDResult dres = search_D(n, k, grid, seed);
  rep.constants["D_star[" + tag + "]"] = dres.D_star;
  rep.add_pass_fail("search_D_feasible[" + tag + "]",
                    dres.found && dres.D_star >= 1e-2, "D_star", dres.D_star);
  if (!dres.found) return rep;
  const double D_run = 0.5 * dres.D_star;

  for (double r : {0.4, 0.2, 0.1}) {
    const SearchC0Result c0res = search_C0(r, D_run, n, k, grid, seed);
    rep.constants["C0_star[" + tag + "," + r_tag(r) + "]"] = c0res.C0_star;
    if (!c0res.feasible) {
      rep.add_pass_fail("search_C0[" + tag + "," + r_tag(r) + "]", false,
                        "C0_star", c0res.C0_star);
      continue;
    }
    ModelParams prm;
    prm.n = n;
    prm.k = k;
    prm.r = r;
    prm.D = D_run;
    prm.C0 = 2.0 * c0res.C0_star;
    prm.s = 0.1 * D_run * r;
    const HConditionsReport cond = verify_h_conditions(prm, grid, seed);
    const std::string where = "[" + tag + "," + r_tag(r) + "]";
    rep.constants["C1" + where] = cond.C1;
    rep.constants["C2" + where] = cond.C2;
    rep.constants["A1" + where] = cond.A1;
    rep.add_pass_fail("h_conditions" + where, cond.all_pass, "C2", cond.C2);
  }

  // Stability of the estimated constants under grid refinement.
  {
    ModelParams prm;
    prm.n = n;
    prm.k = k;
    prm.r = 0.5;
    prm.D = D_run;
    const SearchC0Result c0res = search_C0(0.5, D_run, n, k, grid, seed);
    prm.C0 = c0res.feasible ? 2.0 * c0res.C0_star : 0.0;
    prm.s = 0.1 * D_run * prm.r;
    const HConditionsReport coarse = verify_h_conditions(prm, grid, seed);
    const HConditionsReport fine =
        verify_h_conditions(prm, grid.scaled(2.0), seed);
    double drift = 0.0;
    for (auto [a, b] : {std::pair<double, double>{coarse.C1, fine.C1},
                        {coarse.C2, fine.C2},
                        {coarse.A1, fine.A1}}) {
      if (b > 0.0) drift = std::max(drift, std::abs(a - b) / b);
    }
    rep.add_pass_fail("constants_grid_stability[" + tag + "]", drift < 0.10,
                      "max_drift", drift);
  }

  // Regression baselines, compared at 10%.
  if (!cfg.baselines_path.empty()) {
    const Baselines base = load_baselines(cfg.baselines_path);
    if (!base.loaded) {
      rep.add_flagged("baselines", "loaded", 0.0,
                      "baselines file missing or unreadable: " +
                          cfg.baselines_path);
    } else {
      for (const auto& [key, pinned] : base.values) {
        auto it = rep.constants.find(key);
        if (it == rep.constants.end()) continue;
        const double drift =
            std::abs(it->second - pinned) / std::max(1e-12, std::abs(pinned));
        rep.add_pass_fail("baseline[" + key + "]", drift <= 0.10, "drift",
                          drift);
      }
    }
  }
  return rep;
}

namespace {

CurveSpec build_curve(const std::string& name, double R) {
  if (name == "sector") return make_sector_inclusion(R);
  if (name == "z_half") return make_power_curve(1, 1.0, R);
  if (name == "z_3half") return make_power_curve(3, 1.0, R);
  if (name == "z_squared") return make_square_curve(R);
  if (name == "cubic") {
    CurveSpec c = make_reflected_polynomial({0.0, 1.0, 0.0, 0.5}, R);
    c.name = "cubic";
    return c;
  }
  throw ConfigError("config: unknown curve '" + name + "'");
}

double unit_tube_area_closed_form(double s) {
  // Area of the quarter disk inside {x < s} u {y < s}:
  // 2 * integral_0^s sqrt(1-x^2) dx - s^2.
  return s * std::sqrt(1.0 - s * s) + std::asin(s) - s * s;
}

}  // namespace

CurvesOutput run_curves_suite(const RunConfig& cfg) {
  CurvesOutput out;
  VerificationReport& rep = out.report;
  rep.suite = "curves";
  rep.provenance = make_provenance(cfg);
  const CurveConfig& cc = cfg.curves;

  QuadOptions opts;
  opts.abs_tol = cc.quad_target;

  std::vector<CurveSpec> family;
  for (const auto& name : cc.family) {
    CurveSpec curve = build_curve(name, cc.radius);
    rep.add_pass_fail(
        "curve_valid[" + curve.name + "]", true, "max_residual",
        std::max(curve.cauchy_riemann_residual(), curve.boundary_residual()));
    family.push_back(std::move(curve));
  }

  // Quadrature oracles on the sector inclusion and the square curve.
  {
    const CurveSpec sector = make_sector_inclusion(1.0);
    const double pi = 3.14159265358979323846;
    const double full = area_g(sector, RegionSpec::everything(), opts).value;
    rep.add_pass_fail("quad_oracle_area_full[sector]",
                      std::abs(full - pi / 4.0) <= 1e-6, "abs_error",
                      std::abs(full - pi / 4.0));
    const double len =
        length_g(sector, RegionSpec::max_ball(0.0, 0), opts).value;
    rep.add_pass_fail("quad_oracle_length_full[sector]",
                      std::abs(len - 2.0) <= 1e-6, "abs_error",
                      std::abs(len - 2.0));
    const double tube =
        area_g(sector, RegionSpec::tube_union(0.1, 0), opts).value;
    const double tube_exact = unit_tube_area_closed_form(0.1);
    rep.add_pass_fail("quad_oracle_area_tube[sector,s=0.1]",
                      std::abs(tube - tube_exact) <= 1e-6, "abs_error",
                      std::abs(tube - tube_exact));
    const CurveSpec square = make_square_curve(1.0);
    const double sq_full = area_g(square, RegionSpec::everything(), opts).value;
    rep.add_pass_fail("quad_oracle_area_full[z_squared]",
                      std::abs(sq_full - pi / 2.0) <= 1e-6, "abs_error",
                      std::abs(sq_full - pi / 2.0));
  }

  // K table over the s grid.
  const KTable table = estimate_K(family, cc.s_values, cc.B_radius, opts);
  bool all_finite = true;
  for (const auto& row : table.rows)
    all_finite = all_finite && std::isfinite(row.K) && !row.flagged_zero_area;
  rep.add_pass_fail("K_finite_all_rows", all_finite, "rows",
                    static_cast<double>(table.rows.size()));
  rep.add_pass_fail("K_sup_below_cap", table.sup_K <= cc.K_cap, "sup_K",
                    table.sup_K);
  rep.add_pass_fail("K_drift_under_halving", table.max_drift < 0.10,
                    "max_drift", table.max_drift);
  rep.constants["K_sup"] = table.sup_K;

  // Sector value against the closed-form oracle at s = 0.02.
  {
    const CurveSpec sector = make_sector_inclusion(1.0);
    const double len =
        length_g(sector, RegionSpec::max_ball(cc.B_radius, 0), opts).value;
    const double area =
        area_g(sector, RegionSpec::tube_union(0.02, 0), opts).value;
    const double K = 0.02 * len / area;
    rep.add_pass_fail("K_sector_oracle[s=0.02]", std::abs(K - 0.909) <= 0.01,
                      "K", K);
    rep.constants["K_sector_s002"] = K;
  }

  // Monotonicity of area_h(t)/t along the t grid.
  std::map<std::string, bool> monotone;
  {
    const double t_max =
        0.8 * cc.model.D * cc.model.D * cc.model.r;
    std::vector<double> t_grid;
    for (int i = 1; i <= cc.t_points; ++i)
      t_grid.push_back(t_max * i / cc.t_points);
    for (const CurveSpec& curve : family) {
      const MonotonicityReport mono =
          verify_monotonicity(curve, cc.model, t_grid);
      monotone[curve.name] = mono.nondecreasing;
      rep.add_pass_fail("area_ratio_monotone[" + curve.name + "]",
                        mono.nondecreasing, "worst_drop", mono.worst_drop);
    }
  }

  // CSV rows: curve, s, length, area, K, monotonic.
  std::ostringstream csv;
  csv << "curve,s,length,area,K,monotonic\n";
  for (const auto& row : table.rows) {
    csv << row.curve << ',' << format_double(row.s) << ','
        << format_double(row.length) << ',' << format_double(row.area) << ','
        << format_double(row.K) << ',' << (monotone[row.curve] ? 1 : 0)
        << '\n';
  }
  out.csv = csv.str();
  return out;
}

}  // namespace pshlab
