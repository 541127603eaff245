#pragma once

#include <functional>
#include <string>
#include <vector>

#include "pshlab/scalar_field.hpp"

namespace pshlab {

/// Parameters of the local intersection model: dimension n, intersection
/// type k (number of shared x-directions), tube radius r, interpolation
/// fraction D, square-root-regularization constant C0, neighborhood radius
/// s, and the exclusion-tube radius used when differentiating square roots.
struct ModelParams {
  int n = 2;
  int k = 0;
  double r = 0.5;
  double D = 0.05;
  double C0 = 5.0;
  double s = 0.01;
  double eps_tube = 1e-6;

  /// Throws std::invalid_argument naming the violated invariant.
  void validate() const;

  /// Same as validate() but clamps D > 1/2 down to 1/2, recording a warning.
  ModelParams normalized(std::vector<std::string>* warnings = nullptr) const;
};

/// Value, first and second derivative of a scalar profile at one input.
struct D2 {
  double v = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

/// Smooth nondecreasing cutoff: identity below 1/2, constant 1 above 3/4,
/// blended on (1/2, 3/4) by the flat-at-endpoints exponential partition.
D2 chi_eval(double t);
Jet2 chi(const Jet2& t);

/// One-dimensional cutoff profile used by the flawed local model.
struct CutoffProfile {
  std::string name;
  std::function<D2(double)> eval;
};

CutoffProfile exp_reciprocal_cutoff();  // exp(-1/t) for t > 0, else 0
CutoffProfile chi_cutoff();             // the interpolation cutoff as a profile

/// 2 chi^2 + chi chi'' - 2 (chi')^2; the sign obstruction for the cutoff
/// model restricted to y_1 = 0, y_2 = 1.
double cutoff_deficiency(const CutoffProfile& profile, double t);

enum class RegionLabel { Core, CollarL1, CollarL2, Intermediate, Outside };
const char* to_string(RegionLabel label);

/// Squared distances to the two model Lagrangian planes:
/// rho1 = sum x_i^2, rho2 = sum_{i<=k} x_i^2 + sum_{i>k} y_i^2.
double rho1_value(const Point& p);
double rho2_value(const Point& p, int k);
double rho1_value_flat(const Eigen::VectorXd& q);
double rho2_value_flat(const Eigen::VectorXd& q, int k);

Jet2 rho1_jet(const Point& p);
Jet2 rho2_jet(const Point& p, int k);

ScalarField rho1_field(int n);
ScalarField rho2_field(int n, int k);
ScalarField prod_rho_field(int n, int k);  // rho1 * rho2
/// sqrt(rho1 rho2); jets only off the eps-tube around the planes, value
/// everywhere.
ScalarField sqrt_prod_rho_field(int n, int k, double eps_tube = 1e-6);

/// beta_1 = chi(rho1) chi(rho2) and its r-rescaling
/// beta_r(p) = r^2 beta_1(p / r).
ScalarField beta1_field(int n, int k);
ScalarField beta_r_field(const ModelParams& params);
double beta_r_value_flat(const Eigen::VectorXd& q, const ModelParams& params);

/// Jet of beta_r by the closed global formula (no domain restriction).
Jet2 beta_r_jet(const Point& p, int k, double r);

/// Which branch of the piecewise interpolant applies at p.
RegionLabel region_classify(const Point& p, const ModelParams& params);

/// The piecewise interpolant h~: beta_r near the intersection, rho_i on the
/// collar of L_i beyond the cutoff saturation radius. Defined on the tube
/// union U = {rho1 < (Dr)^2} or {rho2 < (Dr)^2}; evaluation outside U is an
/// error.
ScalarField interpolant_field(const ModelParams& params);

/// sqrt(h~) + C0 r^-1 h~ (the weakly psh square root candidate) and its
/// square h. Jets exclude the eps-tube around L1 u L2 where the square root
/// is not C^2.
ScalarField sqrt_h_field(const ModelParams& params);
ScalarField h_field(const ModelParams& params);

/// Value of h by the closed formula, defined on all of R^{2n}. For the
/// sublevel sets used in curve integrals this agrees with the interpolant
/// wherever the sublevel set can reach.
double h_value_flat(const Eigen::VectorXd& q, const ModelParams& params);

/// Closed collar form of h near one Lagrangian plane:
///   rho_t chi(rho_a/r^2) + C0^2 r^-2 rho_t^2 chi^2 + C0 r^-1 chi^{3/2} rho_t^{3/2},
/// with (rho_a, rho_t) = (rho1, rho2) on the collar of L2 and swapped on the
/// collar of L1. Used for the metric domination and equivalence estimates.
ScalarField collar_h_model_field(const ModelParams& params, bool collar_of_l2);

/// The flawed candidate cutoff(x_1) * |y|^2.
ScalarField cutoff_model_field(int n, const CutoffProfile& profile);

}  // namespace pshlab
