#pragma once

#include <Eigen/Dense>

namespace plantlab {

/// Eigenpairs of a symmetric matrix, eigenvalues ascending. Each eigenvector
/// has its first nonzero coordinate positive.
struct SymmetricEigen {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};

/// Maximum |A - A^T| entry accepted as symmetric.
inline constexpr double kSymmetryTolerance = 1e-12;

/// Throws InputError if `a` is not square and symmetric within kSymmetryTolerance,
/// or has non-finite entries.
void require_symmetric(const Eigen::MatrixXd& a, const char* what);

SymmetricEigen symmetric_eigen(const Eigen::MatrixXd& a);
Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& a);

/// Sum of |eigenvalues| of a symmetric matrix.
double nuclear_norm(const Eigen::MatrixXd& a);
/// Largest |eigenvalue| of a symmetric matrix.
double spectral_norm(const Eigen::MatrixXd& a);

/// Hilbert-Schmidt inner product sum_ij a_ij b_ij.
inline double inner(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) { return a.cwiseProduct(b).sum(); }

}  // namespace plantlab
