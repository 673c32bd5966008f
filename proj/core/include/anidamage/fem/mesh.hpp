// SPDX-License-Identifier: Apache-2.0
//
// Hex8 mesh container with named node/element/face sets. Connectivity uses
// the usual hexahedron ordering (bottom quad counter-clockwise, then top),
// which is also what the VTK writer emits.
#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "anidamage/tensor.hpp"

namespace anidamage {
namespace fem {

struct Mesh {
  std::vector<Vec3> nodes;                        // reference coordinates (mm)
  std::vector<std::array<int, 8>> elements;       // hex8 connectivity
  std::map<std::string, std::vector<int>> node_sets;
  std::map<std::string, std::vector<int>> element_sets;
  // (element, local face 0..5) pairs; see hex8_face_nodes for the local tables
  std::map<std::string, std::vector<std::array<int, 2>>> face_sets;

  int n_nodes() const { return static_cast<int>(nodes.size()); }
  int n_elements() const { return static_cast<int>(elements.size()); }

  const std::vector<int>& node_set(const std::string& name) const;
  const std::vector<std::array<int, 2>>& face_set(const std::string& name) const;
};

// Local node indices of the six hex faces, ordered so that the bilinear
// parametrization's xi x eta normal points outward.
const std::array<int, 4>& hex8_face_nodes(int face);

// Checks connectivity bounds and a positive Jacobian at every Gauss point of
// every element in the reference configuration; throws MeshGenerationFailed.
void validate_mesh(const Mesh& mesh);

}  // namespace fem
}  // namespace anidamage
