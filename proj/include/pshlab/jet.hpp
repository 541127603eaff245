#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace pshlab {

/// Second-order forward-mode jet: value, gradient and dense Hessian of a
/// scalar quantity with respect to a fixed set of 2n real coordinates.
/// Arithmetic on jets propagates first and second derivatives exactly,
/// so a field built from jet operations yields machine-precision Hessians.
struct Jet2 {
  double val = 0.0;
  Eigen::VectorXd grad;
  Eigen::MatrixXd hess;

  Jet2() = default;
  Jet2(double v, Eigen::VectorXd g, Eigen::MatrixXd h)
      : val(v), grad(std::move(g)), hess(std::move(h)) {}

  static Jet2 constant(int dim, double v) {
    return {v, Eigen::VectorXd::Zero(dim), Eigen::MatrixXd::Zero(dim, dim)};
  }

  static Jet2 variable(int dim, int index, double v) {
    Jet2 j = constant(dim, v);
    j.grad(index) = 1.0;
    return j;
  }

  int dim() const { return static_cast<int>(grad.size()); }

  /// Averages away roundoff asymmetry accumulated in long products.
  void symmetrize() { hess = 0.5 * (hess + hess.transpose()).eval(); }
};

inline Jet2 operator+(const Jet2& a, const Jet2& b) {
  return {a.val + b.val, a.grad + b.grad, a.hess + b.hess};
}

inline Jet2 operator-(const Jet2& a, const Jet2& b) {
  return {a.val - b.val, a.grad - b.grad, a.hess - b.hess};
}

inline Jet2 operator-(const Jet2& a) { return {-a.val, -a.grad, -a.hess}; }

inline Jet2 operator+(const Jet2& a, double c) {
  return {a.val + c, a.grad, a.hess};
}
inline Jet2 operator+(double c, const Jet2& a) { return a + c; }
inline Jet2 operator-(const Jet2& a, double c) { return a + (-c); }
inline Jet2 operator-(double c, const Jet2& a) { return (-a) + c; }

inline Jet2 operator*(const Jet2& a, double c) {
  return {a.val * c, a.grad * c, a.hess * c};
}
inline Jet2 operator*(double c, const Jet2& a) { return a * c; }
inline Jet2 operator/(const Jet2& a, double c) { return a * (1.0 / c); }

inline Jet2 operator*(const Jet2& a, const Jet2& b) {
  Eigen::MatrixXd cross = a.grad * b.grad.transpose();
  return {a.val * b.val, a.val * b.grad + b.val * a.grad,
          a.val * b.hess + b.val * a.hess + cross + cross.transpose()};
}

/// Chain rule through a scalar function with derivatives f0 = f(a),
/// f1 = f'(a), f2 = f''(a).
inline Jet2 compose(const Jet2& a, double f0, double f1, double f2) {
  return {f0, f1 * a.grad,
          f1 * a.hess + f2 * (a.grad * a.grad.transpose())};
}

inline Jet2 sqrt(const Jet2& a) {
  if (a.val <= 0.0)
    throw std::domain_error("jet sqrt: nonpositive argument");
  const double s = std::sqrt(a.val);
  return compose(a, s, 0.5 / s, -0.25 / (a.val * s));
}

inline Jet2 exp(const Jet2& a) {
  const double e = std::exp(a.val);
  return compose(a, e, e, e);
}

inline Jet2 log(const Jet2& a) {
  if (a.val <= 0.0)
    throw std::domain_error("jet log: nonpositive argument");
  return compose(a, std::log(a.val), 1.0 / a.val, -1.0 / (a.val * a.val));
}

inline Jet2 inverse(const Jet2& a) {
  if (a.val == 0.0)
    throw std::domain_error("jet inverse: zero argument");
  const double iv = 1.0 / a.val;
  return compose(a, iv, -iv * iv, 2.0 * iv * iv * iv);
}

inline Jet2 operator/(const Jet2& a, const Jet2& b) { return a * inverse(b); }
inline Jet2 operator/(double c, const Jet2& b) { return inverse(b) * c; }

/// a^p for real exponent, a > 0.
inline Jet2 pow(const Jet2& a, double p) {
  if (a.val <= 0.0)
    throw std::domain_error("jet pow: nonpositive base");
  const double f0 = std::pow(a.val, p);
  return compose(a, f0, p * f0 / a.val, p * (p - 1.0) * f0 / (a.val * a.val));
}

}  // namespace pshlab
