// SPDX-License-Identifier: Apache-2.0
//
// Unsymmetric sparse direct solve (the finite-difference tangents are not
// exactly symmetric). The symbolic factorization is reused while the pattern
// stays fixed.
#pragma once

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include "anidamage/errors.hpp"

namespace anidamage {
namespace fem {

class SparseDirectSolver {
public:
  // Solves A x = b; throws SingularSystem if the factorization fails or the
  // relative residual exceeds 1e-10.
  Eigen::VectorXd solve(const Eigen::SparseMatrix<double>& A,
                        const Eigen::VectorXd& b);

private:
  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu_;
  bool analyzed_ = false;
};

// One-shot convenience used by tests.
Eigen::VectorXd sparse_solve(const Eigen::SparseMatrix<double>& A,
                             const Eigen::VectorXd& b);

}  // namespace fem
}  // namespace anidamage
