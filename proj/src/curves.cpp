#include "pshlab/curves.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pshlab/levi.hpp"

namespace pshlab {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kResidualTol = 1e-10;
}  // namespace

CurveComponent CurveComponent::polynomial(
    std::vector<std::complex<double>> coeffs) {
  CurveComponent c;
  c.kind_ = Kind::Polynomial;
  c.coeffs_ = std::move(coeffs);
  if (c.coeffs_.empty()) c.coeffs_.push_back(0.0);
  return c;
}

CurveComponent CurveComponent::half_power(std::complex<double> scale, int m) {
  if (m < 1) throw std::invalid_argument("half_power: m must be >= 1");
  CurveComponent c;
  c.kind_ = Kind::HalfPower;
  c.scale_ = scale;
  c.m_ = m;
  return c;
}

std::complex<double> CurveComponent::eval(std::complex<double> z) const {
  if (kind_ == Kind::Polynomial) {
    std::complex<double> acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
      acc = acc * z + *it;
    return acc;
  }
  return scale_ * std::pow(z, 0.5 * m_);
}

std::complex<double> CurveComponent::deriv(std::complex<double> z) const {
  if (kind_ == Kind::Polynomial) {
    std::complex<double> acc = 0.0;
    for (std::size_t j = coeffs_.size(); j-- > 1;)
      acc = acc * z + static_cast<double>(j) * coeffs_[j];
    return acc;
  }
  return scale_ * (0.5 * m_) * std::pow(z, 0.5 * m_ - 1.0);
}

void DomainSpec::validate() const {
  const double diam =
      shape == Shape::Rectangle ? std::max(width, height) : 2.0 * radius;
  if (!(truncation > 0.0) || truncation >= diam / 10.0)
    throw std::invalid_argument(
        "DomainSpec: truncation must be in (0, diameter/10)");
}

double DomainSpec::s0() const {
  return shape == Shape::Rectangle ? 0.0 : truncation;
}
double DomainSpec::s1() const {
  return shape == Shape::Rectangle ? width : radius;
}
double DomainSpec::t0() const { return 0.0; }
double DomainSpec::t1() const {
  switch (shape) {
    case Shape::Sector: return angle;
    case Shape::UpperHalfDisk: return kPi;
    case Shape::Rectangle: return height;
  }
  return 0.0;
}

std::complex<double> DomainSpec::map(double s, double t) const {
  if (shape == Shape::Rectangle) return {s, t};
  return std::polar(s, t);
}

double DomainSpec::jacobian(double s, double) const {
  return shape == Shape::Rectangle ? 1.0 : s;
}

std::complex<double> BoundaryArc::z(double tau) const {
  return z_start + tau * (z_end - z_start);
}
std::complex<double> BoundaryArc::dz(double) const { return z_end - z_start; }

Eigen::VectorXd CurveSpec::image(std::complex<double> z) const {
  Eigen::VectorXd q(2 * n);
  for (int j = 0; j < n; ++j) {
    const std::complex<double> u = components[j].eval(z);
    q(j) = u.real();
    q(n + j) = u.imag();
  }
  return q;
}

Eigen::VectorXd CurveSpec::tangent(std::complex<double> z) const {
  Eigen::VectorXd v(2 * n);
  for (int j = 0; j < n; ++j) {
    const std::complex<double> d = components[j].deriv(z);
    v(j) = d.real();
    v(n + j) = d.imag();
  }
  return v;
}

double CurveSpec::speed_sq(std::complex<double> z) const {
  double s = 0.0;
  for (int j = 0; j < n; ++j) s += std::norm(components[j].deriv(z));
  return s;
}

double CurveSpec::cauchy_riemann_residual() const {
  const double R = domain.s1();
  const double h = 1e-3 * R;
  double worst = 0.0;
  for (double fs : {0.30, 0.55, 0.80}) {
    for (double ft : {0.20, 0.50, 0.80}) {
      const double s = domain.s0() + fs * (domain.s1() - domain.s0());
      const double t = domain.t0() + ft * (domain.t1() - domain.t0());
      const std::complex<double> z = domain.map(s, t);
      for (int j = 0; j < n; ++j) {
        auto f = [&](std::complex<double> w) { return components[j].eval(w); };
        const std::complex<double> dx =
            (-f(z + 2 * h) + 8.0 * f(z + h) - 8.0 * f(z - h) + f(z - 2 * h)) /
            (12.0 * h);
        const std::complex<double> ih{0.0, h};
        const std::complex<double> dy =
            (-f(z + 2.0 * ih) + 8.0 * f(z + ih) - 8.0 * f(z - ih) +
             f(z - 2.0 * ih)) /
            (12.0 * h);
        const double denom = std::max(1.0, std::abs(components[j].deriv(z)));
        worst = std::max(worst, std::abs(dx + std::complex<double>{0.0, 1.0} * dy) / denom);
      }
    }
  }
  return worst;
}

double CurveSpec::boundary_residual() const {
  double worst = 0.0;
  for (const auto& arc : arcs) {
    for (int i = 0; i <= 32; ++i) {
      const double tau = static_cast<double>(i) / 32;
      const Eigen::VectorXd q = image(arc.z(tau));
      const Point p = Point::from_flat(q);
      const double dist = arc.lagrangian == 1 ? std::sqrt(rho1_value(p))
                                              : std::sqrt(rho2_value(p, k));
      worst = std::max(worst, dist);
    }
  }
  return worst;
}

void CurveSpec::validate() const {
  domain.validate();
  if (components.size() != static_cast<std::size_t>(n))
    throw std::invalid_argument("CurveSpec: component count != n");
  const double cr = cauchy_riemann_residual();
  if (cr > kResidualTol)
    throw std::invalid_argument("CurveSpec '" + name +
                                "': Cauchy-Riemann residual too large");
  const double br = boundary_residual();
  if (br > kResidualTol)
    throw std::invalid_argument("CurveSpec '" + name +
                                "': boundary arc leaves its plane");
}

CurveSpec make_sector_inclusion(double R) {
  if (!(R > 0.0)) throw std::invalid_argument("make_sector_inclusion: R > 0");
  CurveSpec c;
  c.name = "sector";
  c.n = 1;
  c.components = {CurveComponent::polynomial({0.0, 1.0})};
  c.domain.shape = DomainSpec::Shape::Sector;
  c.domain.radius = R;
  c.domain.angle = 0.5 * kPi;
  c.domain.truncation = 1e-7 * R;
  c.arcs = {{"real-axis", 2, {0.0, 0.0}, {R, 0.0}},
            {"imag-axis", 1, {0.0, 0.0}, {0.0, R}}};
  c.validate();
  return c;
}

CurveSpec make_power_curve(int m, std::complex<double> cc, double R) {
  CurveSpec c;
  c.name = "z_" + std::to_string(m) + "half";
  c.n = 1;
  c.components = {CurveComponent::half_power(cc, m)};
  c.domain.shape = DomainSpec::Shape::UpperHalfDisk;
  c.domain.radius = R;
  c.domain.truncation = 1e-7 * R;
  const int label_neg = (m % 2 == 1) ? 1 : 2;
  c.arcs = {{"positive-real", 2, {0.0, 0.0}, {R, 0.0}},
            {"negative-real", label_neg, {0.0, 0.0}, {-R, 0.0}}};
  c.validate();
  return c;
}

CurveSpec make_reflected_polynomial(std::vector<double> coeffs, double R) {
  CurveSpec c;
  c.name = "poly";
  c.n = 1;
  std::vector<std::complex<double>> cc(coeffs.begin(), coeffs.end());
  c.components = {CurveComponent::polynomial(std::move(cc))};
  c.domain.shape = DomainSpec::Shape::UpperHalfDisk;
  c.domain.radius = R;
  c.domain.truncation = 1e-7 * R;
  c.arcs = {{"positive-real", 2, {0.0, 0.0}, {R, 0.0}},
            {"negative-real", 2, {0.0, 0.0}, {-R, 0.0}}};
  c.validate();
  return c;
}

CurveSpec make_square_curve(double R) {
  CurveSpec c;
  c.name = "z_squared";
  c.n = 1;
  c.components = {CurveComponent::polynomial({0.0, 0.0, 1.0})};
  c.domain.shape = DomainSpec::Shape::Sector;
  c.domain.radius = R;
  c.domain.angle = 0.5 * kPi;
  c.domain.truncation = 1e-7 * R;
  c.arcs = {{"real-axis", 2, {0.0, 0.0}, {R, 0.0}},
            {"imag-axis", 2, {0.0, 0.0}, {0.0, R}}};
  c.validate();
  return c;
}

std::vector<CurveSpec> default_curve_family(double R) {
  std::vector<CurveSpec> fam;
  fam.push_back(make_sector_inclusion(R));
  fam.push_back(make_power_curve(1, 1.0, R));
  fam.push_back(make_power_curve(3, 1.0, R));
  fam.push_back(make_square_curve(R));
  CurveSpec cubic = make_reflected_polynomial({0.0, 1.0, 0.0, 0.5}, R);
  cubic.name = "cubic";
  fam.push_back(cubic);
  return fam;
}

RegionSpec RegionSpec::everything() { return {}; }

RegionSpec RegionSpec::tube_union(double s, int k) {
  RegionSpec r;
  r.kind = Kind::TubeUnion;
  r.s = s;
  r.k = k;
  return r;
}

RegionSpec RegionSpec::max_ball(double radius, int k) {
  RegionSpec r;
  r.kind = Kind::MaxBall;
  r.radius = radius;
  r.k = k;
  return r;
}

RegionSpec RegionSpec::sublevel_h(double t, const ModelParams& model) {
  RegionSpec r;
  r.kind = Kind::SublevelH;
  r.t = t;
  r.k = model.k;
  r.model = model;
  return r;
}

double RegionSpec::level(const Eigen::VectorXd& q) const {
  switch (kind) {
    case Kind::Everything:
      return -1.0;
    case Kind::TubeUnion:
      return std::min(std::sqrt(rho1_value_flat(q)),
                      std::sqrt(rho2_value_flat(q, k))) -
             s;
    case Kind::MaxBall:
      return std::max(std::sqrt(rho1_value_flat(q)),
                      std::sqrt(rho2_value_flat(q, k))) -
             radius;
    case Kind::SublevelH:
      return std::sqrt(h_value_flat(q, model)) - t;
  }
  return -1.0;
}

double RegionSpec::feature_scale() const {
  switch (kind) {
    case Kind::Everything: return 0.0;
    case Kind::TubeUnion: return s;
    case Kind::MaxBall: return radius;
    case Kind::SublevelH: return std::max(0.5 * t, 1e-6);
  }
  return 0.0;
}

namespace {

// Bound on the integral over the excised corner/puncture neighborhood,
// from samples along the truncation edge. Integrands here decay toward the
// puncture after the area element is attached, so the edge maximum bounds
// the excised strip.
double excision_bound(const CurveSpec& u, const Fn2& integrand) {
  if (u.domain.shape == DomainSpec::Shape::Rectangle) return 0.0;
  const double s_edge = u.domain.s0();
  double worst = 0.0;
  for (int i = 0; i <= 8; ++i) {
    const double t =
        u.domain.t0() + (u.domain.t1() - u.domain.t0()) * i / 8.0;
    worst = std::max(worst, std::abs(integrand(s_edge, t)));
  }
  return 1.5 * worst * s_edge * (u.domain.t1() - u.domain.t0());
}

CurveIntegral run_2d(const CurveSpec& u, const Fn2& integrand,
                     const Fn2& level, double feature,
                     const QuadOptions& opts) {
  const QuadResult r =
      integrate_2d_region(integrand, level, u.domain.s0(), u.domain.s1(),
                          u.domain.t0(), u.domain.t1(), opts, feature);
  const double excised = excision_bound(u, integrand);
  CurveIntegral out{r.value, r.error + excised, r.converged};
  if (!out.converged)
    throw QuadratureError("area quadrature failed to reach target on '" +
                          u.name + "'");
  return out;
}

}  // namespace

CurveIntegral area_g(const CurveSpec& u, const RegionSpec& region,
                     const QuadOptions& opts) {
  const Fn2 integrand = [&u](double s, double t) {
    const std::complex<double> z = u.domain.map(s, t);
    return u.speed_sq(z) * u.domain.jacobian(s, t);
  };
  Fn2 level;
  if (region.kind != RegionSpec::Kind::Everything) {
    level = [&u, &region](double s, double t) {
      return region.level(u.image(u.domain.map(s, t)));
    };
  }
  return run_2d(u, integrand, level, region.feature_scale(), opts);
}

CurveIntegral length_g(const CurveSpec& u, const RegionSpec& B,
                       const QuadOptions& opts) {
  CurveIntegral out;
  for (const auto& arc : u.arcs) {
    const Fn1 f = [&](double tau) {
      const std::complex<double> z = arc.z(tau);
      return std::sqrt(u.speed_sq(z)) * std::abs(arc.dz(tau));
    };
    // Integrate where the image lies outside B.
    const Fn1 level = [&](double tau) {
      return -B.level(u.image(arc.z(tau)));
    };
    QuadOptions arc_opts = opts;
    arc_opts.abs_tol = opts.abs_tol / std::max<std::size_t>(1, u.arcs.size());
    const QuadResult r =
        integrate_1d_region(f, level, 0.0, 1.0, arc_opts, B.feature_scale());
    if (!r.converged)
      throw QuadratureError("length quadrature failed to reach target on '" +
                            u.name + "'");
    out.value += r.value;
    out.error += r.error;
  }
  return out;
}

CurveIntegral area_h(const CurveSpec& u, const ModelParams& params, double t,
                     const QuadOptions& opts) {
  const double eps2 = params.eps_tube * params.eps_tube;
  const double c0r = params.C0 / params.r;
  const Fn2 integrand = [&](double s, double tt) {
    const std::complex<double> z = u.domain.map(s, tt);
    const Eigen::VectorXd q = u.image(z);
    // The Levi form of h extends by zero through the exclusion tube; the
    // tube's contribution is below quadrature tolerance.
    if (rho1_value_flat(q) <= eps2 || rho2_value_flat(q, params.k) <= eps2)
      return 0.0;
    const Eigen::VectorXd v = u.tangent(z);
    // Global closed formula for h; sublevel sets of interest stay inside
    // the tube union where it coincides with the interpolant.
    const Jet2 b = beta_r_jet(Point::from_flat(q), params.k, params.r);
    const Jet2 sh = sqrt(b) + c0r * b;
    const LeviMatrix M = levi_matrix_from_jet(sh * sh, params.n);
    return v.dot(M.m * v) * u.domain.jacobian(s, tt);
  };
  const RegionSpec region = RegionSpec::sublevel_h(t, params);
  const Fn2 level = [&](double s, double tt) {
    return region.level(u.image(u.domain.map(s, tt)));
  };
  return run_2d(u, integrand, level, region.feature_scale(), opts);
}

MonotonicityReport verify_monotonicity(const CurveSpec& u,
                                       const ModelParams& params,
                                       const std::vector<double>& t_grid,
                                       double slack) {
  MonotonicityReport rep;
  rep.t_values = t_grid;
  for (double t : t_grid) {
    QuadOptions opts;
    opts.abs_tol = std::max(1e-13, 1e-8 * t);
    rep.ratios.push_back(area_h(u, params, t, opts).value / t);
  }
  rep.nondecreasing = true;
  for (std::size_t i = 0; i + 1 < rep.ratios.size(); ++i) {
    const double drop = rep.ratios[i] - rep.ratios[i + 1];
    rep.worst_drop = std::max(rep.worst_drop, drop);
    if (drop > slack) rep.nondecreasing = false;
  }
  return rep;
}

KTable estimate_K(const std::vector<CurveSpec>& family,
                  const std::vector<double>& s_values, double B_radius,
                  const QuadOptions& opts) {
  KTable table;
  const RegionSpec B = RegionSpec::max_ball(B_radius, 0);
  for (const CurveSpec& u : family) {
    const double len = length_g(u, B, opts).value;
    double prev_K = -1.0;
    for (double s : s_values) {
      const RegionSpec Us = RegionSpec::tube_union(s, u.k);
      const double area = area_g(u, Us, opts).value;
      KRow row;
      row.curve = u.name;
      row.s = s;
      row.length = len;
      row.area = area;
      if (area < 1e-14) {
        row.K = 0.0;
        row.flagged_zero_area = true;
      } else {
        row.K = s * len / area;
      }
      table.sup_K = std::max(table.sup_K, row.K);
      if (prev_K > 0.0 && row.K > 0.0)
        table.max_drift = std::max(table.max_drift,
                                   std::abs(row.K - prev_K) / prev_K);
      prev_K = row.K;
      table.rows.push_back(row);
    }
  }
  return table;
}

}  // namespace pshlab
