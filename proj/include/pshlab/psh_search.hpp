#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "pshlab/levi.hpp"
#include "pshlab/model.hpp"

namespace pshlab {

/// Resolution of the deterministic tube grids used by the feasibility
/// sweeps: radial steps across the tube, transverse steps along the
/// complementary block (with extra points in the cutoff transition band),
/// and random directions per radius pair.
struct GridSpec {
  int radial = 16;
  int transverse = 28;
  int directions = 6;
  double tol_rel = kPsdTolRel;

  GridSpec scaled(double factor) const {
    GridSpec g = *this;
    g.radial = std::max(4, static_cast<int>(radial * factor));
    g.transverse = std::max(6, static_cast<int>(transverse * factor));
    g.directions = std::max(3, static_cast<int>(directions * factor));
    return g;
  }
};

struct FeasibilityResult {
  bool feasible = false;
  double min_eig_rel = 0.0;  // min over grid of min-eig / max(1, spec radius)
  Eigen::VectorXd witness;
};

/// Sweeps Levi(beta_1) over the tube union {sqrt(rho1) < D} u {sqrt(rho2) < D}
/// inside a bounding box of radius 2.
FeasibilityResult beta1_psd_on_tubes(int n, int k, double D,
                                     const GridSpec& grid, std::uint64_t seed);

struct SearchDResult {
  double D_star = 0.0;
  bool found = false;
  bool monotone_ok = true;  // feasibility monotone along the dyadic schedule
  std::vector<std::pair<double, bool>> schedule;
};

/// Largest D on the dyadic schedule (with a bisection refinement pass) such
/// that beta_1 stays weakly psh on the D-tubes. Scale invariance of the
/// rescaled interpolant makes the same D serve every r.
SearchDResult search_D(int n, int k, const GridSpec& grid, std::uint64_t seed,
                       double floor = 1e-3);

/// || Levi(beta_r)(p) - Levi(beta_1)(p/r) || / max(1, ||Levi(beta_1)(p/r)||).
double beta_scaling_residual(const Point& p, double r, int n, int k);

struct SearchC0Result {
  double C0_star = 0.0;
  bool feasible = false;
  double min_eig_rel_at_star = 0.0;
  bool bracket_ok = true;  // lower edge infeasible, upper edge feasible
};

/// Smallest C0 in [0, cap] such that sqrt(beta_r) + C0 r^-1 beta_r is weakly
/// psh on the (D r)-tubes minus the exclusion tube, by bisection.
SearchC0Result search_C0(double r, double D, int n, int k,
                         const GridSpec& grid, std::uint64_t seed,
                         double eps_tube = 1e-6, double cap = 1e3);

/// C0_star table over a list of radii; exact scaling makes the entries
/// r-independent up to grid placement.
std::vector<std::pair<double, double>> c0_r_sweep(
    const std::vector<double>& radii, double D, int n, int k,
    const GridSpec& grid, std::uint64_t seed, double eps_tube = 1e-6);

/// Estimated constants for the five conditions on h, inflated by a 10%
/// discretization margin.
struct HConditionsReport {
  bool vanish_ok = false;        // (1) h = 0 on both planes
  bool sqrt_psh_ok = false;      // (2a) sqrt(h) weakly psh on the tubes
  bool strict_psh_ok = false;    // (2b) h strictly psh outside B_r
  double sqrt_min_eig_rel = 0.0;
  double strict_min_eig = 0.0;
  double C1 = 0.0;               // (3) upper metric bound, everywhere
  double C2 = 0.0;               // (4) metric equivalence outside B_r
  double A1 = 0.0;               // (5) |grad h| / sqrt(h) outside B_r
  bool all_pass = false;
  Eigen::VectorXd strict_witness;
};

HConditionsReport verify_h_conditions(const ModelParams& params,
                                      const GridSpec& grid,
                                      std::uint64_t seed);

/// Domination/equivalence constants of the closed collar form of h.
struct CollarMetricReport {
  double C1p = 0.0;
  double C2p = 0.0;
  double min_eig_outside = 0.0;
};

CollarMetricReport verify_collar_metric(const ModelParams& params,
                                        const GridSpec& grid,
                                        std::uint64_t seed);

struct ConstantEstimates {
  double D_star = 0.0;
  double C0_star = 0.0;
  double C1 = 0.0;
  double C2 = 0.0;
  double A1 = 0.0;
  double C1p = 0.0;
  double C2p = 0.0;
};

}  // namespace pshlab
