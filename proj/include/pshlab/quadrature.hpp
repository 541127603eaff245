#pragma once

#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace pshlab {

struct QuadOptions {
  double abs_tol = 1e-8;
  int max_intervals = 4000;      // per adaptive pass
  int initial_probes = 64;       // region bracket scan resolution
  int bracket_refine_depth = 10; // near-miss subdivision depth
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  bool converged = true;
  long evals = 0;
};

/// Raised when the error estimate stalls above the target with the
/// refinement budget exhausted.
class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Gauss-Legendre nodes/weights on [-1, 1], cached per order.
const std::vector<std::pair<double, double>>& gauss_legendre(int order);

using Fn1 = std::function<double(double)>;
using Fn2 = std::function<double(double, double)>;

/// Adaptive Gauss-Legendre (order 16 with embedded order-8 error estimate)
/// over [a, b].
QuadResult integrate_1d(const Fn1& f, double a, double b,
                        const QuadOptions& opts = {});

/// Sub-intervals of [a, b] where level < 0, located by a sign scan with
/// near-miss refinement and bisection of the crossings.
std::vector<std::pair<double, double>> negative_intervals(
    const Fn1& level, double a, double b, const QuadOptions& opts,
    double feature_scale);

/// Integral of f over {t in [a,b] : level(t) < 0}.
QuadResult integrate_1d_region(const Fn1& f, const Fn1& level, double a,
                               double b, const QuadOptions& opts,
                               double feature_scale);

/// Nested adaptive tensor rule over {(s,t) in rect : level(s,t) < 0}.
/// Pass a null level for the whole rectangle. The inner (t) integral slices
/// the region boundary exactly; the outer (s) integral is adaptive, so
/// boundary-tangency kinks refine geometrically.
QuadResult integrate_2d_region(const Fn2& f, const Fn2& level, double s0,
                               double s1, double t0, double t1,
                               const QuadOptions& opts, double feature_scale);

}  // namespace pshlab
