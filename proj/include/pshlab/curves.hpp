#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "pshlab/model.hpp"
#include "pshlab/quadrature.hpp"

namespace pshlab {

/// Empirical cap on the boundary-length/area ratio for the default curve
/// family; the observed supremum is reported alongside.
inline constexpr double kDefaultKCap = 2.0;

/// One holomorphic component: either a polynomial with complex coefficients
/// or c * z^{m/2} (principal branch, m >= 1).
class CurveComponent {
 public:
  static CurveComponent polynomial(std::vector<std::complex<double>> coeffs);
  static CurveComponent half_power(std::complex<double> scale, int m);

  std::complex<double> eval(std::complex<double> z) const;
  std::complex<double> deriv(std::complex<double> z) const;

 private:
  enum class Kind { Polynomial, HalfPower };
  Kind kind_ = Kind::Polynomial;
  std::vector<std::complex<double>> coeffs_;
  std::complex<double> scale_{1.0, 0.0};
  int m_ = 1;
};

/// Planar integration domains, mapped onto a parameter rectangle with a
/// smooth area element. Corners/punctures are excised at the truncation
/// radius with the excised contribution reported as an error bound.
struct DomainSpec {
  enum class Shape { Sector, Rectangle, UpperHalfDisk };
  Shape shape = Shape::Sector;
  double radius = 1.0;
  double angle = 1.5707963267948966;  // sector opening
  double width = 1.0, height = 1.0;   // rectangle
  double truncation = 1e-7;

  void validate() const;
  double s0() const;
  double s1() const;
  double t0() const;
  double t1() const;
  std::complex<double> map(double s, double t) const;
  double jacobian(double s, double t) const;
};

struct BoundaryArc {
  std::string name;
  int lagrangian = 1;  // 1 or 2
  // Arc in the z-plane, parameter in [0, 1].
  std::complex<double> z(double tau) const;
  std::complex<double> dz(double tau) const;
  std::complex<double> z_start{0.0, 0.0}, z_end{1.0, 0.0};  // straight arcs
};

/// Holomorphic map from a planar domain into C^n with labeled boundary
/// arcs on the two model planes. Construction validates holomorphy (via an
/// independent finite-difference Cauchy-Riemann residual) and the boundary
/// labels.
struct CurveSpec {
  std::string name;
  int n = 1;
  int k = 0;
  std::vector<CurveComponent> components;
  DomainSpec domain;
  std::vector<BoundaryArc> arcs;

  Eigen::VectorXd image(std::complex<double> z) const;    // flat point
  Eigen::VectorXd tangent(std::complex<double> z) const;  // flat (Re u', Im u')
  double speed_sq(std::complex<double> z) const;          // sum |u_j'|^2

  /// Max over interior samples of |d/dx u + i d/dy u| / max(1, |u'|), with
  /// derivatives from a 5-point stencil.
  double cauchy_riemann_residual() const;
  /// Max over arc samples of the distance to the labeled plane.
  double boundary_residual() const;
  /// Throws std::invalid_argument if either residual exceeds 1e-10.
  void validate() const;
};

CurveSpec make_sector_inclusion(double R);
/// c * z^{m/2} on the upper half-disk; odd m sends the negative real axis
/// to the imaginary plane.
CurveSpec make_power_curve(int m, std::complex<double> c, double R);
/// Real-coefficient polynomial on the upper half-disk; both boundary arcs
/// stay on the real plane.
CurveSpec make_reflected_polynomial(std::vector<double> coeffs, double R);
/// z^2 on the quarter-disk sector.
CurveSpec make_square_curve(double R);

std::vector<CurveSpec> default_curve_family(double R);

/// Membership levels for the integration regions; negative inside.
struct RegionSpec {
  enum class Kind { Everything, TubeUnion, MaxBall, SublevelH };
  Kind kind = Kind::Everything;
  double s = 0.0;       // tube radius
  double radius = 0.0;  // max-ball radius
  double t = 0.0;       // sublevel threshold, region {h <= t^2}
  int k = 0;
  ModelParams model;

  static RegionSpec everything();
  static RegionSpec tube_union(double s, int k);
  static RegionSpec max_ball(double radius, int k);
  static RegionSpec sublevel_h(double t, const ModelParams& model);

  double level(const Eigen::VectorXd& q) const;
  double feature_scale() const;
};

struct CurveIntegral {
  double value = 0.0;
  double error = 0.0;
  bool converged = true;
};

/// Area of the curve inside the region, with multiplicity, in the flat
/// metric: integral of sum_j |u_j'|^2 over the preimage of the region.
CurveIntegral area_g(const CurveSpec& u, const RegionSpec& region,
                     const QuadOptions& opts = {});

/// Length of the labeled boundary arcs whose image lies outside B.
CurveIntegral length_g(const CurveSpec& u, const RegionSpec& B,
                       const QuadOptions& opts = {});

/// Integral of the Levi form of h on the curve tangent over the sublevel
/// set {h(u) <= t^2}.
CurveIntegral area_h(const CurveSpec& u, const ModelParams& params, double t,
                     const QuadOptions& opts = {});

struct MonotonicityReport {
  std::vector<double> t_values;
  std::vector<double> ratios;  // area_h(t) / t
  bool nondecreasing = false;
  double worst_drop = 0.0;
};

/// Checks that area_h(t)/t is nondecreasing along the grid (slack 1e-6).
MonotonicityReport verify_monotonicity(const CurveSpec& u,
                                       const ModelParams& params,
                                       const std::vector<double>& t_grid,
                                       double slack = 1e-6);

struct KRow {
  std::string curve;
  double s = 0.0;
  double length = 0.0;
  double area = 0.0;
  double K = 0.0;
  bool flagged_zero_area = false;
};

struct KTable {
  std::vector<KRow> rows;
  double sup_K = 0.0;
  double max_drift = 0.0;  // per-curve relative change under s-halving
};

KTable estimate_K(const std::vector<CurveSpec>& family,
                  const std::vector<double>& s_values, double B_radius,
                  const QuadOptions& opts = {});

}  // namespace pshlab
