// SPDX-License-Identifier: Apache-2.0

#include "anidamage/fem/linear_solver.hpp"

#include <string>

namespace anidamage {
namespace fem {

Eigen::VectorXd SparseDirectSolver::solve(const Eigen::SparseMatrix<double>& A,
                                          const Eigen::VectorXd& b) {
  if (!analyzed_) {
    lu_.analyzePattern(A);
    analyzed_ = true;
  }
  lu_.factorize(A);
  if (lu_.info() != Eigen::Success)
    throw SingularSystem("sparse LU factorization failed");
  Eigen::VectorXd x = lu_.solve(b);
  if (lu_.info() != Eigen::Success)
    throw SingularSystem("sparse LU back substitution failed");
  const double bn = b.norm();
  const double rel = (A * x - b).norm() / std::max(bn, 1e-300);
  if (bn > 0.0 && rel > 1e-10)
    throw SingularSystem("sparse solve residual " + std::to_string(rel) +
                         " above tolerance (ill-conditioned system)");
  return x;
}

Eigen::VectorXd sparse_solve(const Eigen::SparseMatrix<double>& A,
                             const Eigen::VectorXd& b) {
  SparseDirectSolver s;
  return s.solve(A, b);
}

}  // namespace fem
}  // namespace anidamage
