#include "pshlab/model.hpp"

#include <cmath>
#include <stdexcept>

namespace pshlab {

void ModelParams::validate() const {
  if (n < 1) throw std::invalid_argument("ModelParams: n must be >= 1");
  if (k < 0 || k > n)
    throw std::invalid_argument("ModelParams: k must satisfy 0 <= k <= n");
  if (!(r > 0.0)) throw std::invalid_argument("ModelParams: r must be > 0");
  if (!(D > 0.0 && D <= 0.5))
    throw std::invalid_argument("ModelParams: D must lie in (0, 1/2]");
  if (C0 < 0.0) throw std::invalid_argument("ModelParams: C0 must be >= 0");
  if (!(s > 0.0 && s < D * r))
    throw std::invalid_argument("ModelParams: s must lie in (0, D*r)");
  if (!(eps_tube > 0.0))
    throw std::invalid_argument("ModelParams: eps_tube must be > 0");
}

ModelParams ModelParams::normalized(std::vector<std::string>* warnings) const {
  ModelParams out = *this;
  if (out.D > 0.5) {
    if (warnings)
      warnings->push_back("D > 1/2 clamped to 1/2 (construction requires D < 1/2)");
    out.D = 0.5;
  }
  out.validate();
  return out;
}

namespace {

// 1-D second-order dual arithmetic for cutoff profiles.
struct Dual {
  double v, d1, d2;
};
Dual dual_add(Dual a, Dual b) { return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2}; }
Dual dual_mul(Dual a, Dual b) {
  return {a.v * b.v, a.v * b.d1 + b.v * a.d1,
          a.v * b.d2 + 2.0 * a.d1 * b.d1 + b.v * a.d2};
}
Dual dual_div(Dual a, Dual b) {
  const double iv = 1.0 / b.v;
  Dual binv{iv, -b.d1 * iv * iv,
            (2.0 * b.d1 * b.d1 * iv - b.d2) * iv * iv};
  return dual_mul(a, binv);
}
Dual dual_exp(Dual a) {
  const double e = std::exp(a.v);
  return {e, e * a.d1, e * (a.d2 + a.d1 * a.d1)};
}

// psi(u) = e^{-1/u} / (e^{-1/u} + e^{-1/(1-u)}) on (0,1), flat at both ends.
Dual psi_eval(double u) {
  if (u <= 1e-9) return {0.0, 0.0, 0.0};
  if (u >= 1.0 - 1e-9) return {1.0, 0.0, 0.0};
  const Dual uu{u, 1.0, 0.0};
  const Dual one_minus{1.0 - u, -1.0, 0.0};
  const Dual a = dual_exp(dual_div(Dual{-1.0, 0.0, 0.0}, uu));
  const Dual b = dual_exp(dual_div(Dual{-1.0, 0.0, 0.0}, one_minus));
  return dual_div(a, dual_add(a, b));
}

}  // namespace

D2 chi_eval(double t) {
  if (t < 0.0) throw std::domain_error("chi: negative argument");
  if (t <= 0.5) return {t, 1.0, 0.0};
  if (t >= 0.75) return {1.0, 0.0, 0.0};
  // chi = (1 - psi(u)) t + psi(u), u = 4 (t - 1/2)
  const double u = 4.0 * (t - 0.5);
  const Dual p = psi_eval(u);
  const double pt1 = 4.0 * p.d1;         // d psi / dt
  const double pt2 = 16.0 * p.d2;        // d^2 psi / dt^2
  D2 out;
  out.v = (1.0 - p.v) * t + p.v;
  out.d1 = (1.0 - p.v) + pt1 * (1.0 - t);
  out.d2 = -2.0 * pt1 + pt2 * (1.0 - t);
  return out;
}

Jet2 chi(const Jet2& t) {
  const D2 c = chi_eval(t.val);
  return compose(t, c.v, c.d1, c.d2);
}

CutoffProfile exp_reciprocal_cutoff() {
  return {"exp(-1/t)", [](double t) -> D2 {
            if (t <= 1e-6) return {0.0, 0.0, 0.0};
            const double a = std::exp(-1.0 / t);
            const double t2 = t * t;
            return {a, a / t2, a * (1.0 / (t2 * t2) - 2.0 / (t2 * t))};
          }};
}

CutoffProfile chi_cutoff() {
  return {"chi", [](double t) { return chi_eval(t); }};
}

double cutoff_deficiency(const CutoffProfile& profile, double t) {
  const D2 c = profile.eval(t);
  return 2.0 * c.v * c.v + c.v * c.d2 - 2.0 * c.d1 * c.d1;
}

const char* to_string(RegionLabel label) {
  switch (label) {
    case RegionLabel::Core: return "core";
    case RegionLabel::CollarL1: return "collar_L1";
    case RegionLabel::CollarL2: return "collar_L2";
    case RegionLabel::Intermediate: return "intermediate";
    case RegionLabel::Outside: return "outside";
  }
  return "?";
}

double rho1_value(const Point& p) { return p.x.squaredNorm(); }

double rho2_value(const Point& p, int k) {
  return p.x.head(k).squaredNorm() + p.y.tail(p.n() - k).squaredNorm();
}

double rho1_value_flat(const Eigen::VectorXd& q) {
  return q.head(q.size() / 2).squaredNorm();
}

double rho2_value_flat(const Eigen::VectorXd& q, int k) {
  const int n = static_cast<int>(q.size()) / 2;
  return q.head(k).squaredNorm() + q.tail(n - k).squaredNorm();
}

Jet2 rho1_jet(const Point& p) {
  const int n = p.n(), d = 2 * n;
  Jet2 j = Jet2::constant(d, rho1_value(p));
  j.grad.head(n) = 2.0 * p.x;
  j.hess.topLeftCorner(n, n) = 2.0 * Eigen::MatrixXd::Identity(n, n);
  return j;
}

Jet2 rho2_jet(const Point& p, int k) {
  const int n = p.n(), d = 2 * n;
  Jet2 j = Jet2::constant(d, rho2_value(p, k));
  for (int i = 0; i < k; ++i) {
    j.grad(i) = 2.0 * p.x(i);
    j.hess(i, i) = 2.0;
  }
  for (int i = k; i < n; ++i) {
    j.grad(n + i) = 2.0 * p.y(i);
    j.hess(n + i, n + i) = 2.0;
  }
  return j;
}

ScalarField rho1_field(int n) {
  return ScalarField("rho1", n, [](const Point& p) { return rho1_jet(p); });
}

ScalarField rho2_field(int n, int k) {
  return ScalarField("rho2", n,
                     [k](const Point& p) { return rho2_jet(p, k); });
}

ScalarField prod_rho_field(int n, int k) {
  return ScalarField("rho1*rho2", n, [k](const Point& p) {
    return rho1_jet(p) * rho2_jet(p, k);
  });
}

namespace {
bool off_tube(const Point& p, int k, double eps) {
  const double e2 = eps * eps;
  return rho1_value(p) > e2 && rho2_value(p, k) > e2;
}
}  // namespace

ScalarField sqrt_prod_rho_field(int n, int k, double eps_tube) {
  ScalarField f("sqrt(rho1*rho2)", n, [k](const Point& p) {
    return sqrt(rho1_jet(p) * rho2_jet(p, k));
  });
  f.with_smooth_domain(
      [k, eps_tube](const Point& p) { return off_tube(p, k, eps_tube); });
  f.with_value([k](const Point& p) {
    return std::sqrt(rho1_value(p) * rho2_value(p, k));
  });
  return f;
}

Jet2 beta_r_jet(const Point& p, int k, double r) {
  const double inv_r2 = 1.0 / (r * r);
  return (r * r) * (chi(rho1_jet(p) * inv_r2) * chi(rho2_jet(p, k) * inv_r2));
}

namespace {
double beta_r_value(const Point& p, int k, double r) {
  const double inv_r2 = 1.0 / (r * r);
  return r * r * chi_eval(rho1_value(p) * inv_r2).v *
         chi_eval(rho2_value(p, k) * inv_r2).v;
}
}  // namespace

ScalarField beta1_field(int n, int k) {
  return ScalarField("beta1", n, [k](const Point& p) {
    return beta_r_jet(p, k, 1.0);
  });
}

ScalarField beta_r_field(const ModelParams& params) {
  params.validate();
  const int k = params.k;
  const double r = params.r;
  ScalarField f("beta_r", params.n,
                [k, r](const Point& p) { return beta_r_jet(p, k, r); });
  f.with_value([k, r](const Point& p) { return beta_r_value(p, k, r); });
  return f;
}

double beta_r_value_flat(const Eigen::VectorXd& q, const ModelParams& params) {
  const double inv_r2 = 1.0 / (params.r * params.r);
  return params.r * params.r *
         chi_eval(rho1_value_flat(q) * inv_r2).v *
         chi_eval(rho2_value_flat(q, params.k) * inv_r2).v;
}

RegionLabel region_classify(const Point& p, const ModelParams& params) {
  const double r2 = params.r * params.r;
  const double dr2 = params.D * params.D * r2;
  const double a = rho1_value(p);
  const double b = rho2_value(p, params.k);
  if (a >= dr2 && b >= dr2) return RegionLabel::Outside;
  if (a < dr2 && b >= 0.75 * r2) return RegionLabel::CollarL1;
  if (b < dr2 && a >= 0.75 * r2) return RegionLabel::CollarL2;
  if (a <= 0.5 * r2 && b <= 0.5 * r2) return RegionLabel::Core;
  return RegionLabel::Intermediate;
}

namespace {
bool in_tube_union(const Point& p, const ModelParams& params) {
  return region_classify(p, params) != RegionLabel::Outside;
}
}  // namespace

ScalarField interpolant_field(const ModelParams& params) {
  params.validate();
  const ModelParams prm = params;
  ScalarField f("h_tilde", prm.n, [prm](const Point& p) {
    return beta_r_jet(p, prm.k, prm.r);
  });
  f.with_smooth_domain([prm](const Point& p) { return in_tube_union(p, prm); });
  f.with_value([prm](const Point& p) { return beta_r_value(p, prm.k, prm.r); },
               [prm](const Point& p) { return in_tube_union(p, prm); });
  return f;
}

ScalarField sqrt_h_field(const ModelParams& params) {
  params.validate();
  const ModelParams prm = params;
  ScalarField f("sqrt_h", prm.n, [prm](const Point& p) {
    const Jet2 b = beta_r_jet(p, prm.k, prm.r);
    return sqrt(b) + (prm.C0 / prm.r) * b;
  });
  f.with_smooth_domain([prm](const Point& p) {
    return in_tube_union(p, prm) && off_tube(p, prm.k, prm.eps_tube);
  });
  f.with_value(
      [prm](const Point& p) {
        const double b = beta_r_value(p, prm.k, prm.r);
        return std::sqrt(b) + prm.C0 / prm.r * b;
      },
      [prm](const Point& p) { return in_tube_union(p, prm); });
  return f;
}

ScalarField h_field(const ModelParams& params) {
  params.validate();
  const ModelParams prm = params;
  ScalarField f("h", prm.n, [prm](const Point& p) {
    const Jet2 b = beta_r_jet(p, prm.k, prm.r);
    const Jet2 s = sqrt(b) + (prm.C0 / prm.r) * b;
    return s * s;
  });
  f.with_smooth_domain([prm](const Point& p) {
    return in_tube_union(p, prm) && off_tube(p, prm.k, prm.eps_tube);
  });
  f.with_value(
      [prm](const Point& p) {
        const double b = beta_r_value(p, prm.k, prm.r);
        const double s = std::sqrt(b) + prm.C0 / prm.r * b;
        return s * s;
      },
      [prm](const Point& p) { return in_tube_union(p, prm); });
  return f;
}

double h_value_flat(const Eigen::VectorXd& q, const ModelParams& params) {
  const double b = beta_r_value_flat(q, params);
  const double s = std::sqrt(b) + params.C0 / params.r * b;
  return s * s;
}

ScalarField collar_h_model_field(const ModelParams& params, bool collar_of_l2) {
  params.validate();
  const ModelParams prm = params;
  auto jets = [prm, collar_of_l2](const Point& p) {
    const Jet2 r1 = rho1_jet(p);
    const Jet2 r2 = rho2_jet(p, prm.k);
    const Jet2& rho_a = collar_of_l2 ? r1 : r2;
    const Jet2& rho_t = collar_of_l2 ? r2 : r1;
    const double inv_r2 = 1.0 / (prm.r * prm.r);
    const Jet2 c = chi(rho_a * inv_r2);
    const double c0r = prm.C0 / prm.r;
    return rho_t * c + (c0r * c0r) * (rho_t * rho_t) * (c * c) +
           c0r * pow(c, 1.5) * pow(rho_t, 1.5);
  };
  ScalarField f(collar_of_l2 ? "h_collar_L2" : "h_collar_L1", prm.n, jets);
  f.with_smooth_domain([prm](const Point& p) {
    return off_tube(p, prm.k, prm.eps_tube);
  });
  return f;
}

ScalarField cutoff_model_field(int n, const CutoffProfile& profile) {
  auto eval = profile.eval;
  return ScalarField("cutoff_model[" + profile.name + "]", n,
                     [eval, n](const Point& p) {
                       const int d = 2 * n;
                       const Jet2 x1 = Jet2::variable(d, 0, p.x(0));
                       const D2 c = eval(p.x(0));
                       const Jet2 cut = compose(x1, c.v, c.d1, c.d2);
                       Jet2 ysq = Jet2::constant(d, p.y.squaredNorm());
                       ysq.grad.tail(n) = 2.0 * p.y;
                       ysq.hess.bottomRightCorner(n, n) =
                           2.0 * Eigen::MatrixXd::Identity(n, n);
                       return cut * ysq;
                     });
}

}  // namespace pshlab
