#include "pshlab/psh_search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "pshlab/rng.hpp"

namespace pshlab {

namespace {

// Coordinate indices of the block measured by rho_which and its complement.
std::pair<std::vector<int>, std::vector<int>> block_indices(int n, int k,
                                                            int which) {
  std::vector<int> block, comp;
  if (which == 1) {
    for (int i = 0; i < n; ++i) block.push_back(i);
    for (int i = 0; i < n; ++i) comp.push_back(n + i);
  } else {
    for (int i = 0; i < k; ++i) block.push_back(i);
    for (int i = k; i < n; ++i) block.push_back(n + i);
    for (int i = k; i < n; ++i) comp.push_back(i);
    for (int i = 0; i < k; ++i) comp.push_back(n + i);
  }
  return {block, comp};
}

Eigen::VectorXd assemble(int dim, const std::vector<int>& block,
                         const Eigen::VectorXd& bvec,
                         const std::vector<int>& comp,
                         const Eigen::VectorXd& cvec) {
  Eigen::VectorXd q = Eigen::VectorXd::Zero(dim);
  for (std::size_t i = 0; i < block.size(); ++i) q(block[i]) = bvec(i);
  for (std::size_t i = 0; i < comp.size(); ++i) q(comp[i]) = cvec(i);
  return q;
}

std::vector<double> radial_set(double tube_radius, int count,
                               double min_radius) {
  std::vector<double> rs;
  const double lo = std::max(min_radius, 1e-4 * tube_radius);
  for (int i = 0; i < count; ++i)
    rs.push_back(lo + (tube_radius * 0.999 - lo) * (i + 0.5) / count);
  rs.push_back(tube_radius * 0.999);
  if (min_radius > 0.0) {
    // Log schedule toward the exclusion tube; also exercises the one-sided
    // limit of the square-root fields.
    for (double f : {2.0, 8.0, 64.0, 512.0}) {
      const double v = min_radius * f;
      if (v < tube_radius * 0.9) rs.push_back(v);
    }
  } else {
    rs.push_back(tube_radius * 1e-3);
  }
  return rs;
}

std::vector<double> transverse_set(double outer_bound, int count,
                                   double transition_scale,
                                   double min_radius) {
  std::vector<double> ts;
  const double lo = std::max(min_radius, 1e-4 * outer_bound);
  for (int i = 0; i < count; ++i)
    ts.push_back(lo + (outer_bound - lo) * (i + 0.5) / count);
  // Cutoff transition band, where the second derivatives concentrate.
  const int band = std::max(6, count / 2);
  for (int i = 0; i < band; ++i)
    ts.push_back(transition_scale * (0.60 + 0.38 * (i + 0.5) / band));
  if (min_radius > 0.0) {
    for (double f : {2.0, 16.0, 256.0})
      ts.push_back(std::min(min_radius * f, outer_bound));
    ts.push_back(0.01 * transition_scale);
  }
  return ts;
}

// Deterministic point set covering the tube {sqrt(rho_which) < tube_radius}
// out to |complement block| <= outer_bound.
std::vector<Eigen::VectorXd> tube_points(int n, int k, int which,
                                         double tube_radius,
                                         double outer_bound,
                                         double transition_scale,
                                         const GridSpec& grid, Rng& rng,
                                         double min_radius) {
  const auto [block, comp] = block_indices(n, k, which);
  const int bs = static_cast<int>(block.size());
  const int cs = static_cast<int>(comp.size());
  const int dim = 2 * n;

  std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>> dirs;
  for (int d = 0; d < grid.directions; ++d)
    dirs.emplace_back(rng.unit_vector(bs), rng.unit_vector(cs));
  {
    Eigen::VectorXd eb = Eigen::VectorXd::Zero(bs);
    eb(0) = 1.0;
    Eigen::VectorXd ec = Eigen::VectorXd::Zero(cs);
    ec(0) = 1.0;
    Eigen::VectorXd ecl = Eigen::VectorXd::Zero(cs);
    ecl(cs - 1) = 1.0;
    dirs.emplace_back(eb, ec);
    dirs.emplace_back(eb, ecl);
    dirs.emplace_back(Eigen::VectorXd::Constant(bs, 1.0 / std::sqrt(bs)),
                      Eigen::VectorXd::Constant(cs, 1.0 / std::sqrt(cs)));
  }

  std::vector<Eigen::VectorXd> pts;
  for (double rin : radial_set(tube_radius, grid.radial, min_radius)) {
    for (double rout :
         transverse_set(outer_bound, grid.transverse, transition_scale,
                        min_radius)) {
      for (const auto& [ub, uc] : dirs)
        pts.push_back(assemble(dim, block, rin * ub, comp, rout * uc));
    }
  }
  return pts;
}

double rel_min_eig(const LeviMatrix& M) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(M.m,
                                                        Eigen::EigenvaluesOnly);
  const Eigen::VectorXd ev = solver.eigenvalues();
  return ev.minCoeff() / std::max(1.0, ev.cwiseAbs().maxCoeff());
}

}  // namespace

FeasibilityResult beta1_psd_on_tubes(int n, int k, double D,
                                     const GridSpec& grid,
                                     std::uint64_t seed) {
  const ScalarField b1 = beta1_field(n, k);
  FeasibilityResult out;
  out.min_eig_rel = std::numeric_limits<double>::infinity();
  for (int which : {1, 2}) {
    Rng rng(seed + which);
    for (const auto& q :
         tube_points(n, k, which, D, 2.0, 1.0, grid, rng, 0.0)) {
      const Point p = Point::from_flat(q);
      const double rel = rel_min_eig(levi_matrix(b1, p));
      if (rel < out.min_eig_rel) {
        out.min_eig_rel = rel;
        out.witness = q;
      }
    }
  }
  out.feasible = out.min_eig_rel >= -grid.tol_rel;
  return out;
}

SearchDResult search_D(int n, int k, const GridSpec& grid, std::uint64_t seed,
                       double floor) {
  SearchDResult out;
  double first_feasible = 0.0;
  for (double D = 0.5; D >= floor; D *= 0.5) {
    const bool ok = beta1_psd_on_tubes(n, k, D, grid, seed).feasible;
    out.schedule.emplace_back(D, ok);
    if (ok && first_feasible == 0.0) {
      first_feasible = D;
    } else if (!ok && first_feasible != 0.0) {
      // Feasibility must be monotone: smaller D keeps the tube smaller.
      out.monotone_ok = false;
    }
  }
  if (first_feasible == 0.0) return out;

  out.found = true;
  out.D_star = first_feasible;
  double lo = first_feasible;
  double hi = std::min(2.0 * first_feasible, 0.5);
  if (hi > lo) {
    for (int i = 0; i < 6; ++i) {
      const double mid = 0.5 * (lo + hi);
      if (beta1_psd_on_tubes(n, k, mid, grid, seed).feasible)
        lo = mid;
      else
        hi = mid;
    }
    out.D_star = lo;
  }
  return out;
}

double beta_scaling_residual(const Point& p, double r, int n, int k) {
  ModelParams prm;
  prm.n = n;
  prm.k = k;
  prm.r = r;
  prm.D = 0.25;
  prm.C0 = 0.0;
  prm.s = 0.1 * prm.D * r;
  const ScalarField br = beta_r_field(prm);
  const ScalarField b1 = beta1_field(n, k);
  const LeviMatrix lhs = levi_matrix(br, p);
  const Point scaled(p.x / r, p.y / r);
  const LeviMatrix rhs = levi_matrix(b1, scaled);
  return (lhs.m - rhs.m).norm() / std::max(1.0, rhs.m.norm());
}

SearchC0Result search_C0(double r, double D, int n, int k,
                         const GridSpec& grid, std::uint64_t seed,
                         double eps_tube, double cap) {
  ModelParams prm;
  prm.n = n;
  prm.k = k;
  prm.r = r;
  prm.D = D;
  prm.C0 = 0.0;
  prm.s = 0.1 * D * r;
  prm.eps_tube = eps_tube;
  const ScalarField br = beta_r_field(prm);

  // Levi pairs at every grid point: the candidate's Levi form is
  // Levi(sqrt(beta_r)) + (C0/r) Levi(beta_r), linear in C0.
  std::vector<std::pair<Eigen::MatrixXd, Eigen::MatrixXd>> pairs;
  for (int which : {1, 2}) {
    Rng rng(seed + 10 + which);
    for (const auto& q : tube_points(n, k, which, D * r, 1.5 * r, r, grid, rng,
                                     eps_tube)) {
      const Point p = Point::from_flat(q);
      if (rho1_value(p) <= eps_tube * eps_tube ||
          rho2_value(p, k) <= eps_tube * eps_tube)
        continue;
      const Jet2 bj = br.jet(p);
      pairs.emplace_back(levi_matrix_from_jet(sqrt(bj), n).m,
                         levi_matrix_from_jet(bj, n).m);
    }
  }

  auto feasibility = [&](double c0) {
    double worst = std::numeric_limits<double>::infinity();
    for (const auto& [ms, mb] : pairs) {
      const LeviMatrix M{ms + (c0 / r) * mb, n};
      worst = std::min(worst, rel_min_eig(M));
      if (worst < -grid.tol_rel) return std::make_pair(false, worst);
    }
    return std::make_pair(true, worst);
  };

  SearchC0Result out;
  if (auto [ok, worst] = feasibility(0.0); ok) {
    out.C0_star = 0.0;
    out.feasible = true;
    out.min_eig_rel_at_star = worst;
    return out;
  }
  if (auto [ok, worst] = feasibility(cap); !ok) {
    out.feasible = false;
    out.min_eig_rel_at_star = worst;
    return out;
  }

  double lo = 0.0, hi = cap;
  for (int i = 0; i < 60 && hi - lo > std::max(1e-4, 2e-3 * hi); ++i) {
    const double mid = 0.5 * (lo + hi);
    if (feasibility(mid).first)
      hi = mid;
    else
      lo = mid;
  }
  out.C0_star = hi;
  out.feasible = true;
  out.bracket_ok = !feasibility(lo == 0.0 ? 0.0 : lo).first;
  out.min_eig_rel_at_star = feasibility(hi).second;
  return out;
}

std::vector<std::pair<double, double>> c0_r_sweep(
    const std::vector<double>& radii, double D, int n, int k,
    const GridSpec& grid, std::uint64_t seed, double eps_tube) {
  std::vector<std::pair<double, double>> out;
  for (double r : radii) {
    const SearchC0Result res = search_C0(r, D, n, k, grid, seed, eps_tube);
    out.emplace_back(r, res.feasible ? res.C0_star
                                     : std::numeric_limits<double>::quiet_NaN());
  }
  return out;
}

HConditionsReport verify_h_conditions(const ModelParams& params,
                                      const GridSpec& grid,
                                      std::uint64_t seed) {
  params.validate();
  const int n = params.n, k = params.k;
  const double r = params.r;
  HConditionsReport rep;

  const ScalarField h = h_field(params);
  const ScalarField sh = sqrt_h_field(params);

  // (1) vanishing on both planes; the value path is defined on the tube
  // union including the planes themselves.
  Rng rng(seed);
  double worst_plane = 0.0;
  for (int i = 0; i < 100; ++i) {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd y(n);
    for (int j = 0; j < n; ++j) y(j) = rng.uniform(-1.5 * r, 1.5 * r);
    worst_plane = std::max(worst_plane, std::abs(h.value(Point(x, y))));
  }
  for (int i = 0; i < 100; ++i) {
    Eigen::VectorXd x(n), y(n);
    for (int j = 0; j < k; ++j) x(j) = 0.0;
    for (int j = k; j < n; ++j) x(j) = rng.uniform(-1.5 * r, 1.5 * r);
    for (int j = 0; j < k; ++j) y(j) = rng.uniform(-1.5 * r, 1.5 * r);
    for (int j = k; j < n; ++j) y(j) = 0.0;
    worst_plane = std::max(worst_plane, std::abs(h.value(Point(x, y))));
  }
  rep.vanish_ok = worst_plane <= 1e-12;

  // Tube grids over U = the (Dr)-tube union, split at B_r.
  std::vector<Point> all_pts, outside_pts;
  for (int which : {1, 2}) {
    Rng grng(seed + 20 + which);
    for (const auto& q : tube_points(n, k, which, params.D * r, 1.5 * r, r,
                                     grid, grng, params.eps_tube)) {
      const Point p = Point::from_flat(q);
      if (rho1_value(p) <= params.eps_tube * params.eps_tube ||
          rho2_value(p, k) <= params.eps_tube * params.eps_tube)
        continue;
      all_pts.push_back(p);
      const double rmax = std::sqrt(
          std::max(rho1_value(p), rho2_value(p, k)));
      if (rmax >= 0.5 * r * (1.0 + 1e-9)) outside_pts.push_back(p);
    }
  }

  // (2a) weak psh of sqrt(h) on U; (3) upper metric bound everywhere.
  double sqrt_min = std::numeric_limits<double>::infinity();
  double c1 = 0.0;
  for (const Point& p : all_pts) {
    sqrt_min = std::min(sqrt_min, rel_min_eig(levi_matrix(sh, p)));
    c1 = std::max(c1, max_eigenvalue(levi_matrix(h, p)) / 2.0);
  }
  rep.sqrt_min_eig_rel = sqrt_min;
  rep.sqrt_psh_ok = sqrt_min >= -grid.tol_rel;
  rep.C1 = 1.1 * c1;

  // (2b) strict psh of h outside B_r; (4) metric equivalence there;
  // (5) gradient bound there.
  double strict_min = std::numeric_limits<double>::infinity();
  double c2 = 0.0, a1 = 0.0;
  for (const Point& p : outside_pts) {
    const Jet2 jet = h.jet(p);
    const LeviMatrix M = levi_matrix_from_jet(jet, n);
    const double lo = min_eigenvalue(M);
    const double hi2 = max_eigenvalue(M);
    if (lo < strict_min) {
      strict_min = lo;
      rep.strict_witness = p.flat();
    }
    if (lo > 0.0) c2 = std::max({c2, hi2 / 2.0, 2.0 / lo});
    const double hv = h.value(p);
    if (hv > 0.0) a1 = std::max(a1, jet.grad.norm() / std::sqrt(hv));
  }
  rep.strict_min_eig = strict_min;
  rep.strict_psh_ok = strict_min > 0.0;
  rep.C2 = 1.1 * c2;
  rep.A1 = 1.1 * a1;

  rep.all_pass = rep.vanish_ok && rep.sqrt_psh_ok && rep.strict_psh_ok &&
                 std::isfinite(rep.C1) && std::isfinite(rep.C2) &&
                 std::isfinite(rep.A1) && rep.C1 > 0.0 && rep.C2 >= 1.0 &&
                 rep.A1 > 0.0;
  return rep;
}

CollarMetricReport verify_collar_metric(const ModelParams& params,
                                        const GridSpec& grid,
                                        std::uint64_t seed) {
  params.validate();
  const int n = params.n, k = params.k;
  const double r = params.r;
  CollarMetricReport rep;
  rep.min_eig_outside = std::numeric_limits<double>::infinity();

  for (bool collar_of_l2 : {true, false}) {
    const ScalarField f = collar_h_model_field(params, collar_of_l2);
    const int which = collar_of_l2 ? 2 : 1;
    Rng rng(seed + 30 + which);
    for (const auto& q :
         tube_points(n, k, which, 0.5 * params.D * r, 1.2 * r, r, grid, rng,
                     params.eps_tube)) {
      const Point p = Point::from_flat(q);
      if (rho1_value(p) <= params.eps_tube * params.eps_tube ||
          rho2_value(p, k) <= params.eps_tube * params.eps_tube)
        continue;
      const LeviMatrix M = levi_matrix(f, p);
      rep.C1p = std::max(rep.C1p, max_eigenvalue(M) / 2.0);
      const double along =
          std::sqrt(collar_of_l2 ? rho1_value(p) : rho2_value(p, k));
      if (along >= 0.5 * r) {
        const double lo = min_eigenvalue(M);
        rep.min_eig_outside = std::min(rep.min_eig_outside, lo);
        if (lo > 0.0)
          rep.C2p = std::max({rep.C2p, max_eigenvalue(M) / 2.0, 2.0 / lo});
      }
    }
  }
  rep.C1p *= 1.1;
  rep.C2p *= 1.1;
  return rep;
}

}  // namespace pshlab
