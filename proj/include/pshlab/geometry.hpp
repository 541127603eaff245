#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <utility>

namespace pshlab {

/// Point of C^n split into real coordinates (x_1..x_n, y_1..y_n).
struct Point {
  Eigen::VectorXd x;
  Eigen::VectorXd y;

  Point() = default;
  Point(Eigen::VectorXd xs, Eigen::VectorXd ys)
      : x(std::move(xs)), y(std::move(ys)) {
    if (x.size() != y.size() || x.size() < 1)
      throw std::invalid_argument("Point: x and y must have equal length n >= 1");
  }

  int n() const { return static_cast<int>(x.size()); }

  Eigen::VectorXd flat() const {
    Eigen::VectorXd q(2 * n());
    q << x, y;
    return q;
  }

  static Point from_flat(const Eigen::VectorXd& q) {
    if (q.size() % 2 != 0 || q.size() < 2)
      throw std::invalid_argument("Point: flat vector must have even length >= 2");
    const int n = static_cast<int>(q.size()) / 2;
    return Point(q.head(n), q.tail(n));
  }
};

/// Multiplication by sqrt(-1) on R^{2n} = C^n: (v_x, v_y) -> (-v_y, v_x).
inline Eigen::VectorXd apply_J(const Eigen::VectorXd& v) {
  if (v.size() % 2 != 0 || v.size() < 2)
    throw std::invalid_argument("apply_J: vector length must be even and >= 2");
  const int n = static_cast<int>(v.size()) / 2;
  Eigen::VectorXd out(2 * n);
  out.head(n) = -v.tail(n);
  out.tail(n) = v.head(n);
  return out;
}

/// The 2n x 2n matrix of apply_J in the standard basis.
inline Eigen::MatrixXd complex_structure(int n) {
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  J.topRightCorner(n, n) = -Eigen::MatrixXd::Identity(n, n);
  J.bottomLeftCorner(n, n) = Eigen::MatrixXd::Identity(n, n);
  return J;
}

}  // namespace pshlab
