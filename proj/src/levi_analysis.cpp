#include "pshlab/levi_analysis.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "pshlab/rng.hpp"

namespace pshlab {

namespace {

double sum_xk_sq(const Point& p, int k) {
  return p.x.head(k).squaredNorm();
}

// Orthonormal basis of the complement of span{v, w} via Householder QR.
Eigen::MatrixXd complement_basis(const Eigen::VectorXd& v,
                                 const Eigen::VectorXd& w) {
  const int d = static_cast<int>(v.size());
  Eigen::MatrixXd vw(d, 2);
  vw.col(0) = v;
  vw.col(1) = w;
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(vw);
  Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(d, d);
  return Q.rightCols(d - 2);
}

double claim_residual(const Eigen::MatrixXd& M, const Eigen::VectorXd& v,
                      double lambda, double m_norm) {
  return (M * v - lambda * v).norm() / std::max(1.0, m_norm * v.norm());
}

}  // namespace

std::pair<Eigen::VectorXd, Eigen::VectorXd> sqrt_levi_eigvectors(const Point& p,
                                                                 int k) {
  const int n = p.n();
  const double a = rho1_value(p);
  const double b = rho2_value(p, k);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(2 * n);
  for (int i = 0; i < n; ++i) {
    if (i >= k) v(i) = a * p.y(i);
    v(n + i) = (b - (i < k ? a : 0.0)) * p.x(i);
  }
  return {v, -apply_J(v)};
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> grad_form_eigvectors(const Point& p,
                                                                 int k) {
  const int n = p.n();
  const double a = rho1_value(p);
  const double b = rho2_value(p, k);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(2 * n);
  for (int i = 0; i < n; ++i) {
    if (i >= k) v(i) = a * p.y(i);
    v(n + i) = -(b + (i < k ? a : 0.0)) * p.x(i);
  }
  return {v, apply_J(v)};
}

EigenstructureCheck verify_sqrt_levi_eigenstructure(const Point& p, int n,
                                                    int k, double eps_tube) {
  const ScalarField f = sqrt_prod_rho_field(n, k, eps_tube);
  const LeviMatrix M0 = levi_matrix(f, p);
  const double a = rho1_value(p);
  const double b = rho2_value(p, k);
  const double sab = std::sqrt(a * b);
  const double m_norm = M0.m.norm();

  EigenstructureCheck out;
  auto [v0, w0] = sqrt_levi_eigvectors(p, k);
  out.claim.point = p;
  out.claim.v = v0;
  out.claim.w = w0;
  out.claim.lambda = 2.0 * sum_xk_sq(p, k) / sab;
  out.flagged_zero_vector = v0.norm() < 1e-12;
  if (!out.flagged_zero_vector) {
    out.claim.residual =
        std::max(claim_residual(M0.m, v0, out.claim.lambda, m_norm),
                 claim_residual(M0.m, w0, out.claim.lambda, m_norm));
  }

  const double lambda_perp = (a + b) / sab;
  if (2 * n > 2 && !out.flagged_zero_vector) {
    const Eigen::MatrixXd basis = complement_basis(v0, w0);
    double worst = 0.0;
    for (int j = 0; j < basis.cols(); ++j) {
      worst = std::max(
          worst, claim_residual(M0.m, basis.col(j), lambda_perp, m_norm));
    }
    out.complement_residual = worst;
  }
  out.max_residual = std::max(out.claim.residual, out.complement_residual);
  return out;
}

EigenstructureCheck verify_grad_form_eigenstructure(const Point& p, int n,
                                                    int k, double eps_tube) {
  const ScalarField f = sqrt_prod_rho_field(n, k, eps_tube);
  const LeviMatrix M1 = grad_form_matrix(f, p);
  const double a = rho1_value(p);
  const double b = rho2_value(p, k);
  const double m_norm = M1.m.norm();

  EigenstructureCheck out;
  auto [v1, w1] = grad_form_eigvectors(p, k);
  out.claim.point = p;
  out.claim.v = v1;
  out.claim.w = w1;
  out.claim.lambda = 2.0 * sum_xk_sq(p, k) + a + b;
  out.flagged_zero_vector = v1.norm() < 1e-12;
  if (!out.flagged_zero_vector) {
    out.claim.residual =
        std::max(claim_residual(M1.m, v1, out.claim.lambda, m_norm),
                 claim_residual(M1.m, w1, out.claim.lambda, m_norm));
  }

  if (2 * n > 2 && !out.flagged_zero_vector) {
    const Eigen::MatrixXd basis = complement_basis(v1, w1);
    double worst = 0.0;
    for (int j = 0; j < basis.cols(); ++j) {
      worst = std::max(worst, (M1.m * basis.col(j)).norm() /
                                  std::max(1.0, m_norm));
    }
    out.complement_residual = worst;
  }
  out.max_residual = std::max(out.claim.residual, out.complement_residual);
  return out;
}

double product_rule_residual(const Point& p, int n, int k, double eps_tube) {
  const ScalarField prod = prod_rho_field(n, k);
  const ScalarField root = sqrt_prod_rho_field(n, k, eps_tube);
  const LeviMatrix lhs = levi_matrix(prod, p);
  const Jet2 root_jet = root.jet(p);
  const LeviMatrix M0 = levi_matrix_from_jet(root_jet, n);
  const LeviMatrix M1 = grad_form_matrix_from_gradient(root_jet.grad);
  const Eigen::MatrixXd rhs = 2.0 * root_jet.val * M0.m + 2.0 * M1.m;
  return (lhs.m - rhs).norm() / std::max(1.0, lhs.m.norm());
}

VarietySample classify_variety_point(const Point& p, int k, double tol) {
  VarietySample s;
  s.point = p;
  s.res_xk = k > 0 ? p.x.head(k).cwiseAbs().maxCoeff() : 0.0;
  const int n = p.n();
  double xy = 0.0;
  for (int j = k; j < n; ++j) xy += p.x(j) * p.y(j);
  s.res_xy = std::abs(xy);
  s.res_ab = std::abs(rho1_value(p) - rho2_value(p, k));
  s.on_variety = s.res_xk <= tol && s.res_xy <= tol && s.res_ab <= tol;
  return s;
}

std::vector<VarietySample> sample_variety(int n, int k, int count,
                                          std::uint64_t seed) {
  Rng rng(seed);
  std::vector<VarietySample> out;
  out.reserve(count);
  const int m = n - k;
  while (static_cast<int>(out.size()) < count) {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd y = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < k; ++i) y(i) = rng.uniform(-1.0, 1.0);
    if (m <= 1) {
      // Here the variety degenerates to the intersection of the planes.
      out.push_back(classify_variety_point(Point(x, y), k));
      continue;
    }
    Eigen::VectorXd xf(m), yf(m);
    for (int i = 0; i < m; ++i) xf(i) = rng.uniform(-1.0, 1.0);
    for (int i = 0; i < m; ++i) yf(i) = rng.uniform(-1.0, 1.0);
    if (xf.norm() < 0.3) continue;
    yf -= (yf.dot(xf) / xf.squaredNorm()) * xf;
    if (yf.norm() < 0.1) continue;
    yf *= xf.norm() / yf.norm();  // forces rho1 = rho2
    x.tail(m) = xf;
    y.tail(m) = yf;
    VarietySample s = classify_variety_point(Point(x, y), k);
    if (!s.on_variety)
      throw std::logic_error("sample_variety: constructed point off variety");
    out.push_back(s);
  }
  return out;
}

std::vector<VarietySample> sample_variety_planes(int n, int k, int count,
                                                 std::uint64_t seed) {
  if (n - k != 2)
    throw std::invalid_argument("sample_variety_planes: requires n - k == 2");
  Rng rng(seed);
  std::vector<VarietySample> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd y = Eigen::VectorXd::Zero(n);
    for (int j = 0; j < k; ++j) y(j) = rng.uniform(-1.0, 1.0);
    const double xa = rng.uniform(-1.0, 1.0);
    const double ya = rng.uniform(-1.0, 1.0);
    const double sign = (i % 2 == 0) ? 1.0 : -1.0;
    x(n - 2) = xa;
    y(n - 2) = ya;
    x(n - 1) = sign * ya;
    y(n - 1) = -sign * xa;
    VarietySample s = classify_variety_point(Point(x, y), k);
    if (!s.on_variety)
      throw std::logic_error("sample_variety_planes: point off variety");
    out.push_back(s);
  }
  return out;
}

std::vector<Point> sample_off_variety(int n, int k, int count, double margin,
                                      std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Point> out;
  out.reserve(count);
  int guard = 0;
  while (static_cast<int>(out.size()) < count) {
    if (++guard > 100000 * count)
      throw std::runtime_error("sample_off_variety: rejection stalled");
    Eigen::VectorXd q = rng.box_vector(2 * n, 1.5);
    const Point p = Point::from_flat(q);
    const double a = rho1_value(p);
    const double b = rho2_value(p, k);
    if (std::sqrt(a) < margin || std::sqrt(b) < margin) continue;
    const VarietySample s = classify_variety_point(p, k, 0.0);
    // Normalized residual triple as a distance proxy to the variety.
    const double scale = std::max(1.0, p.flat().norm());
    const double dv = std::max({s.res_xk,
                                s.res_xy / scale,
                                s.res_ab / (std::sqrt(a) + std::sqrt(b))});
    if (dv < margin) continue;
    out.push_back(p);
  }
  return out;
}

ProductPshReport verify_product_psh(int n, int k, int sample_count,
                                    int on_count, int off_count, double margin,
                                    std::uint64_t seed) {
  ProductPshReport rep;
  const ScalarField root = sqrt_prod_rho_field(n, k);
  const ScalarField prod = prod_rho_field(n, k);
  Rng rng(seed);

  double worst_sqrt = 0.0;
  int done = 0;
  while (done < sample_count) {
    const Point p = Point::from_flat(rng.box_vector(2 * n, 1.5));
    if (std::sqrt(rho1_value(p)) < 1e-3 ||
        std::sqrt(rho2_value(p, k)) < 1e-3)
      continue;
    const LeviMatrix M = levi_matrix(root, p);
    const double scale = std::max(1.0, spectral_radius(M));
    worst_sqrt = std::min(worst_sqrt, min_eigenvalue(M) / scale);
    ++done;
  }
  rep.sqrt_min_eig_rel = worst_sqrt;
  rep.sqrt_psh_ok = worst_sqrt >= -kPsdTolRel;

  auto on_points = sample_variety(n, k, on_count, seed + 1);
  if (n - k == 2) {
    auto plane_points = sample_variety_planes(n, k, on_count / 2, seed + 2);
    on_points.insert(on_points.end(), plane_points.begin(),
                     plane_points.end());
  }
  double worst_on = 0.0;
  for (const auto& s : on_points) {
    const LeviMatrix M = levi_matrix(prod, s.point);
    const double scale = std::max(1.0, spectral_radius(M));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
        M.m, Eigen::EigenvaluesOnly);
    const double smallest_abs = solver.eigenvalues().cwiseAbs().minCoeff();
    worst_on = std::max(worst_on, smallest_abs / scale);
  }
  rep.on_v_max_abs_eig = worst_on;
  rep.degenerate_on_v = worst_on <= 1e-8;

  double min_off = std::numeric_limits<double>::infinity();
  for (const Point& p : sample_off_variety(n, k, off_count, margin, seed + 3)) {
    min_off = std::min(min_off, min_eigenvalue(levi_matrix(prod, p)));
  }
  rep.off_v_min_eig = min_off;
  rep.positive_off_v = min_off > 0.0;
  return rep;
}

CutoffScanResult scan_cutoff_model(const CutoffProfile& profile, int nx,
                                   int nradius, int nangle, double y_lo,
                                   double y_hi) {
  const int n = 2;
  const ScalarField f = cutoff_model_field(n, profile);
  CutoffScanResult out;
  out.min_eig = std::numeric_limits<double>::infinity();

  bool any = false;
  for (int ix = 1; ix <= nx; ++ix) {
    const double x1 = static_cast<double>(ix) / (nx + 1);
    if (profile.eval(x1).v == 0.0 && profile.eval(x1).d1 == 0.0) continue;
    for (int irad = 0; irad < nradius; ++irad) {
      const double rad =
          y_lo + (y_hi - y_lo) * irad / std::max(1, nradius - 1);
      for (int ia = 0; ia < nangle; ++ia) {
        const double th = 2.0 * 3.14159265358979323846 * ia / nangle;
        Eigen::VectorXd x(2), y(2);
        x << x1, 0.0;
        y << rad * std::cos(th), rad * std::sin(th);
        const Point p(x, y);
        const double ev = min_eigenvalue(levi_matrix(f, p));
        any = true;
        if (ev < out.min_eig) {
          out.min_eig = ev;
          out.worst = p;
        }
      }
    }
  }
  if (!any)
    throw std::runtime_error(
        "scan_cutoff_model: grid entirely inside the vanishing region");

  out.negativity_found = out.min_eig <= -1e-6;
  out.deficiency_at_witness = cutoff_deficiency(profile, out.worst.x(0));
  out.deficiency_negative = out.deficiency_at_witness < 0.0;
  return out;
}

}  // namespace pshlab
