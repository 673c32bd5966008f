// SPDX-License-Identifier: Apache-2.0
//
// Global DOF numbering (node-major: u_x, u_y, u_z, dbar_1..dbar_n per node)
// and Dirichlet bookkeeping. Prescribed values are functions of the load
// factor so nonlinear programs (e.g. a rigid face rotation) fit the same
// interface as linear ramps.
#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "anidamage/errors.hpp"

namespace anidamage {
namespace fem {

class DofMap {
public:
  DofMap(int n_nodes, int n_dbar)
      : n_nodes_(n_nodes), n_dbar_(n_dbar),
        constrained_(static_cast<size_t>(ndof()), -1) {}

  int n_nodes() const { return n_nodes_; }
  int n_dbar() const { return n_dbar_; }
  int dofs_per_node() const { return 3 + n_dbar_; }
  int ndof() const { return n_nodes_ * dofs_per_node(); }

  // comp: 0..2 displacement, 3..2+n_dbar nonlocal
  int dof(int node, int comp) const {
    return node * dofs_per_node() + comp;
  }

  using ValueFn = std::function<double(double)>;  // load factor -> value

  void constrain(int node, int comp, ValueFn value);
  void constrain_zero(std::span<const int> nodes, int comp);
  void constrain_linear(std::span<const int> nodes, int comp, double amplitude);

  bool is_constrained(int dof) const { return constrained_[static_cast<size_t>(dof)] >= 0; }
  int n_constraints() const { return static_cast<int>(values_.size()); }

  // Writes prescribed values at load factor t into the solution vector.
  void apply_prescribed(double t, std::span<double> x) const;

  const std::vector<int>& constrained_dofs() const { return dofs_; }

private:
  int n_nodes_, n_dbar_;
  std::vector<int> constrained_;  // dof -> constraint index or -1
  std::vector<int> dofs_;
  std::vector<ValueFn> values_;
};

}  // namespace fem
}  // namespace anidamage
