#pragma once

#include <Eigen/Dense>

#include "pshlab/geometry.hpp"
#include "pshlab/scalar_field.hpp"

namespace pshlab {

/// Relative tolerance for positive-semidefiniteness acceptance; scaled by
/// the spectral radius of the matrix under test.
inline constexpr double kPsdTolRel = 1e-9;

/// Real symmetric 2n x 2n matrix of a sesquilinear form dd^c f(., sqrt(-1) .).
/// Commutes with the complex structure by construction.
struct LeviMatrix {
  Eigen::MatrixXd m;
  int n = 0;

  int dim() const { return 2 * n; }
};

/// Levi form of f at p, normalized so that the squared distance to a
/// Lagrangian coordinate plane (|y|^2, and likewise rho_1, rho_2) maps to
/// 2*Id. Realized as H + J^T H J with H the real Hessian.
LeviMatrix levi_matrix(const ScalarField& f, const Point& p);
LeviMatrix levi_matrix_from_jet(const Jet2& jet, int n);

/// Matrix of df ^ d^c f (., sqrt(-1) .): g g^T + (Jg)(Jg)^T with g the
/// gradient of f at p. Positive semidefinite of rank <= 2.
LeviMatrix grad_form_matrix(const ScalarField& f, const Point& p);
LeviMatrix grad_form_matrix_from_gradient(const Eigen::VectorXd& g);

/// Central-difference Hessian of the field's value path. Test oracle for
/// the jet arithmetic; the stencil must stay inside the smooth domain.
Eigen::MatrixXd fd_hessian(const ScalarField& f, const Point& p, double step);

double min_eigenvalue(const LeviMatrix& M);
double max_eigenvalue(const LeviMatrix& M);
double spectral_radius(const LeviMatrix& M);

/// min eig >= -tol * max(1, spectral radius).
bool is_psd(const LeviMatrix& M, double tol = kPsdTolRel);

}  // namespace pshlab
