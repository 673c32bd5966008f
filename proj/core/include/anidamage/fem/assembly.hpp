// SPDX-License-Identifier: Apache-2.0
//
// Global residual/tangent assembly. The sparsity pattern (with Dirichlet
// rows/columns eliminated) is built once; element contributions scatter into
// precomputed slots in fixed element order, so the result is deterministic
// regardless of how many worker threads computed the element matrices.
#pragma once

#include <Eigen/Sparse>
#include <optional>
#include <vector>

#include "anidamage/fem/dofmap.hpp"
#include "anidamage/fem/element.hpp"
#include "anidamage/parallel.hpp"

namespace anidamage {
namespace fem {

struct PressureLoad {
  std::vector<std::array<int, 2>> faces;  // (element, local face)
  double magnitude = 0.0;                 // p at load factor 1 (MPa)
};

struct ResidualStats {
  double stored_energy = 0.0;           // integral of psi (N mm)
  double point_dissipation_min = 0.0;   // min over GPs of Y:dD + R_d dxi
  double dgamma_max = 0.0;
  double dgamma_min = 0.0;
  double damage_eig_max = 0.0;
  double xi_decrease_max = 0.0;         // max of (xi_n - xi_{n+1}), <= 0 when sane
};

class Assembler {
public:
  Assembler(const Mesh& mesh, const DofMap& dofs, ElementModel model,
            int threads = 1);

  // Internal-minus-external residual; optionally captures advanced states
  // and step statistics (relative to states_n).
  void residual(const Eigen::VectorXd& x,
                const std::vector<InternalState>& states_n, double dt,
                double pressure_factor, Eigen::VectorXd& r,
                std::vector<InternalState>* states_out,
                ResidualStats* stats = nullptr,
                Eigen::VectorXd* f_external = nullptr) const;

  // Tangent with Dirichlet rows/cols eliminated (unit diagonal kept).
  void tangent(const Eigen::VectorXd& x,
               const std::vector<InternalState>& states_n, double dt,
               double pressure_factor, TangentMode mode,
               Eigen::SparseMatrix<double>& K) const;

  const Eigen::SparseMatrix<double>& pattern() const { return pattern_; }
  const std::vector<ElementGeometry>& geometry() const { return geometry_; }
  const ElementModel& model() const { return model_; }

  void set_pressure(PressureLoad load) { pressure_ = std::move(load); }
  const std::optional<PressureLoad>& pressure() const { return pressure_; }

  int n_gauss_states() const { return 8 * static_cast<int>(geometry_.size()); }

  // Global dof indices of an element in element-local order (u block, then
  // nonlocal block).
  const std::vector<int>& element_dofs(int e) const {
    return element_dofs_[static_cast<size_t>(e)];
  }

private:
  void gather(const Eigen::VectorXd& x, int e, std::vector<double>& ue,
              std::vector<double>& de) const;
  void add_pressure(const Eigen::VectorXd& x, double pressure_factor,
                    Eigen::VectorXd& f_ext) const;

  const Mesh* mesh_;
  const DofMap* dofs_;
  ElementModel model_;
  int threads_;
  std::optional<PressureLoad> pressure_;
  std::vector<ElementGeometry> geometry_;
  std::vector<std::vector<int>> element_dofs_;
  Eigen::SparseMatrix<double> pattern_;        // compressed, zero values
  std::vector<std::vector<int>> slots_;        // per element, ndof^2 slot ids (-1 eliminated)
};

}  // namespace fem
}  // namespace anidamage
