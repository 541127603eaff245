#include "pshlab/levi.hpp"

#include <cmath>
#include <stdexcept>

namespace pshlab {

LeviMatrix levi_matrix_from_jet(const Jet2& jet, int n) {
  const Eigen::MatrixXd J = complex_structure(n);
  Eigen::MatrixXd m = jet.hess + J.transpose() * jet.hess * J;
  m = 0.5 * (m + m.transpose()).eval();
  return {std::move(m), n};
}

LeviMatrix levi_matrix(const ScalarField& f, const Point& p) {
  return levi_matrix_from_jet(f.jet(p), p.n());
}

LeviMatrix grad_form_matrix_from_gradient(const Eigen::VectorXd& g) {
  const Eigen::VectorXd Jg = apply_J(g);
  Eigen::MatrixXd m = g * g.transpose() + Jg * Jg.transpose();
  return {std::move(m), static_cast<int>(g.size()) / 2};
}

LeviMatrix grad_form_matrix(const ScalarField& f, const Point& p) {
  return grad_form_matrix_from_gradient(f.jet(p).grad);
}

Eigen::MatrixXd fd_hessian(const ScalarField& f, const Point& p, double step) {
  if (step <= 0.0) throw std::invalid_argument("fd_hessian: step must be > 0");
  const int d = 2 * p.n();
  const Eigen::VectorXd q0 = p.flat();
  auto value_at = [&](const Eigen::VectorXd& q) {
    return f.value(Point::from_flat(q));
  };

  // Fourth-order central stencils; the stencil reach is 2 * step, matching
  // the required interior margin.
  static constexpr double off[4] = {2.0, 1.0, -1.0, -2.0};
  static constexpr double wgt[4] = {-1.0, 8.0, -8.0, 1.0};

  Eigen::MatrixXd H(d, d);
  const double f0 = value_at(q0);
  for (int i = 0; i < d; ++i) {
    Eigen::VectorXd q = q0;
    auto at = [&](double a) {
      q(i) = q0(i) + a * step;
      return value_at(q);
    };
    H(i, i) = (-at(2.0) + 16.0 * at(1.0) - 30.0 * f0 + 16.0 * at(-1.0) -
               at(-2.0)) /
              (12.0 * step * step);
    q(i) = q0(i);
    for (int j = i + 1; j < d; ++j) {
      double acc = 0.0;
      for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
          Eigen::VectorXd qq = q0;
          qq(i) += off[a] * step;
          qq(j) += off[b] * step;
          acc += wgt[a] * wgt[b] * value_at(qq);
        }
      }
      const double v = acc / (144.0 * step * step);
      H(i, j) = v;
      H(j, i) = v;
    }
  }
  return H;
}

namespace {
Eigen::VectorXd eigenvalues_of(const LeviMatrix& M) {
  if (!M.m.allFinite())
    throw std::invalid_argument("eigenvalues: non-finite matrix entries");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      M.m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}
}  // namespace

double min_eigenvalue(const LeviMatrix& M) {
  return eigenvalues_of(M).minCoeff();
}

double max_eigenvalue(const LeviMatrix& M) {
  return eigenvalues_of(M).maxCoeff();
}

double spectral_radius(const LeviMatrix& M) {
  return eigenvalues_of(M).cwiseAbs().maxCoeff();
}

bool is_psd(const LeviMatrix& M, double tol) {
  const Eigen::VectorXd ev = eigenvalues_of(M);
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  return ev.minCoeff() >= -tol * scale;
}

}  // namespace pshlab
