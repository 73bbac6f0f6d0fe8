#include "plantlab/spectral.hpp"

#include "plantlab/errors.hpp"

#include <string>

namespace plantlab {

void require_symmetric(const Eigen::MatrixXd& a, const char* what) {
  if (a.rows() != a.cols()) throw InputError(std::string(what) + ": matrix must be square");
  if (!a.allFinite()) throw InputError(std::string(what) + ": matrix has non-finite entries");
  if (a.size() > 0 && (a - a.transpose()).cwiseAbs().maxCoeff() > kSymmetryTolerance) {
    throw InputError(std::string(what) + ": matrix is not symmetric");
  }
}

SymmetricEigen symmetric_eigen(const Eigen::MatrixXd& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::ComputeEigenvectors);
  SymmetricEigen out{solver.eigenvalues(), solver.eigenvectors()};
  for (Eigen::Index c = 0; c < out.vectors.cols(); ++c) {
    for (Eigen::Index r = 0; r < out.vectors.rows(); ++r) {
      const double x = out.vectors(r, c);
      if (x != 0.0) {
        if (x < 0.0) out.vectors.col(c) *= -1.0;
        break;
      }
    }
  }
  return out;
}

Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& a) {
  if (a.size() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

double nuclear_norm(const Eigen::MatrixXd& a) {
  require_symmetric(a, "nuclear_norm");
  if (a.size() == 0) return 0.0;
  return symmetric_eigenvalues(a).cwiseAbs().sum();
}

double spectral_norm(const Eigen::MatrixXd& a) {
  require_symmetric(a, "spectral_norm");
  if (a.size() == 0) return 0.0;
  return symmetric_eigenvalues(a).cwiseAbs().maxCoeff();
}

}  // namespace plantlab
