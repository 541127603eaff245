#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "pshlab/levi.hpp"
#include "pshlab/model.hpp"

namespace pshlab {

/// Predicted eigenvector/eigenvalue pair with its verified residual
/// ||M v - lambda v|| / max(1, ||M|| ||v||).
struct EigenClaim {
  Point point;
  Eigen::VectorXd v;
  Eigen::VectorXd w;
  double lambda = 0.0;
  double residual = 0.0;
};

struct EigenstructureCheck {
  EigenClaim claim;
  double complement_residual = 0.0;
  double max_residual = 0.0;
  bool flagged_zero_vector = false;
};

/// v0 = (alpha y_i [i>k] | (beta - alpha [i<=k]) x_i), w0 = -J v0.
/// These span the small-eigenvalue plane of the Levi form of
/// sqrt(rho1 rho2).
std::pair<Eigen::VectorXd, Eigen::VectorXd> sqrt_levi_eigvectors(
    const Point& p, int k);

/// v1 = (alpha y_i [i>k] | -(beta + alpha [i<=k]) x_i), w1 = J v1.
/// These span the rank-2 image of the gradient form.
std::pair<Eigen::VectorXd, Eigen::VectorXd> grad_form_eigvectors(
    const Point& p, int k);

/// Checks that the Levi form M0 of sqrt(rho1 rho2) acts as
/// (2 sum_{i<=k} x_i^2 / sqrt(ab)) Id on span{v0,w0} and as
/// ((a+b)/sqrt(ab)) Id on the orthogonal complement.
EigenstructureCheck verify_sqrt_levi_eigenstructure(const Point& p, int n,
                                                    int k,
                                                    double eps_tube = 1e-6);

/// Checks that the gradient form M1 of sqrt(rho1 rho2) has eigenvalue
/// (2 sum_{i<=k} x_i^2 + a + b) on span{v1,w1} and vanishes on the
/// complement.
EigenstructureCheck verify_grad_form_eigenstructure(const Point& p, int n,
                                                    int k,
                                                    double eps_tube = 1e-6);

/// Residual of the product rule
///   Levi(rho1 rho2) = 2 sqrt(rho1 rho2) M0 + 2 M1,
/// relative to max(1, ||Levi(rho1 rho2)||).
double product_rule_residual(const Point& p, int n, int k,
                             double eps_tube = 1e-6);

/// Sample point of the degeneracy variety
///   V = { x_i = 0 (i<=k), sum_{j>k} x_j y_j = 0, rho1 = rho2 }.
struct VarietySample {
  Point point;
  bool on_variety = false;
  double res_xk = 0.0;  // max |x_i|, i <= k
  double res_xy = 0.0;  // |sum_{j>k} x_j y_j|
  double res_ab = 0.0;  // |rho1 - rho2|
};

VarietySample classify_variety_point(const Point& p, int k,
                                     double tol = 1e-10);

/// Constructive sampler: solves the defining equations by orthogonalizing
/// and rescaling the free block. For n-k <= 1 this degenerates to points of
/// L1 n L2.
std::vector<VarietySample> sample_variety(int n, int k, int count,
                                          std::uint64_t seed);

/// Points on the two explicit n-planes
///   { x_i = 0 (i<=k), x_n = +-y_{n-1}, y_n = -+x_{n-1} }
/// that make up V when n-k = 2.
std::vector<VarietySample> sample_variety_planes(int n, int k, int count,
                                                 std::uint64_t seed);

/// Rejection sampler keeping distance >= margin from V u L1 u L2, measured
/// through the membership residual triple.
std::vector<Point> sample_off_variety(int n, int k, int count, double margin,
                                      std::uint64_t seed);

/// Weak psh of sqrt(rho1 rho2) and the degenerate/strict split of
/// Levi(rho1 rho2) across V.
struct ProductPshReport {
  double sqrt_min_eig_rel = 0.0;   // min over samples of min-eig / scale
  double on_v_max_abs_eig = 0.0;   // max over on-V samples of min |eig| / scale
  double off_v_min_eig = 0.0;      // min over off-V samples of min-eig
  bool sqrt_psh_ok = false;
  bool degenerate_on_v = false;
  bool positive_off_v = false;
};

ProductPshReport verify_product_psh(int n, int k, int sample_count,
                                    int on_count, int off_count, double margin,
                                    std::uint64_t seed);

/// Grid scan of the flawed model cutoff(x_1) |y|^2 in n = 2 over
/// x_1 in (0,1), |y| in [y_lo, y_hi].
struct CutoffScanResult {
  Point worst;            // grid point minimizing the smallest Levi eigenvalue
  double min_eig = 0.0;
  double deficiency_at_witness = 0.0;  // at the slice y1=0, y2=1
  bool negativity_found = false;       // min_eig <= -1e-6
  bool deficiency_negative = false;
};

CutoffScanResult scan_cutoff_model(const CutoffProfile& profile, int nx = 48,
                                   int nradius = 11, int nangle = 16,
                                   double y_lo = 0.5, double y_hi = 1.5);

}  // namespace pshlab
