// SPDX-License-Identifier: Apache-2.0

#include "anidamage/fem/dofmap.hpp"

#include <string>

namespace anidamage {
namespace fem {

void DofMap::constrain(int node, int comp, ValueFn value) {
  if (node < 0 || node >= n_nodes_ || comp < 0 || comp >= dofs_per_node())
    throw ConfigError("constraint addresses node " + std::to_string(node) +
                      " component " + std::to_string(comp) + " out of range");
  const int d = dof(node, comp);
  if (constrained_[static_cast<size_t>(d)] >= 0)
    throw ConfigError("dof of node " + std::to_string(node) + ", component " +
                      std::to_string(comp) + " already has a prescription");
  constrained_[static_cast<size_t>(d)] = static_cast<int>(values_.size());
  dofs_.push_back(d);
  values_.push_back(std::move(value));
}

void DofMap::constrain_zero(std::span<const int> nodes, int comp) {
  for (int a : nodes) constrain(a, comp, [](double) { return 0.0; });
}

void DofMap::constrain_linear(std::span<const int> nodes, int comp, double amplitude) {
  for (int a : nodes)
    constrain(a, comp, [amplitude](double t) { return amplitude * t; });
}

void DofMap::apply_prescribed(double t, std::span<double> x) const {
  for (size_t k = 0; k < dofs_.size(); ++k)
    x[static_cast<size_t>(dofs_[k])] = values_[k](t);
}

}  // namespace fem
}  // namespace anidamage
