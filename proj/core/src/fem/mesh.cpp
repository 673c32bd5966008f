// SPDX-License-Identifier: Apache-2.0

#include "anidamage/fem/mesh.hpp"

#include <string>

#include "anidamage/fem/element.hpp"

namespace anidamage {
namespace fem {

const std::vector<int>& Mesh::node_set(const std::string& name) const {
  const auto it = node_sets.find(name);
  if (it == node_sets.end())
    throw MeshGenerationFailed("mesh has no node set named '" + name + "'");
  return it->second;
}

const std::vector<std::array<int, 2>>& Mesh::face_set(const std::string& name) const {
  const auto it = face_sets.find(name);
  if (it == face_sets.end())
    throw MeshGenerationFailed("mesh has no face set named '" + name + "'");
  return it->second;
}

const std::array<int, 4>& hex8_face_nodes(int face) {
  // outward-oriented quads of the reference hexahedron
  static const std::array<std::array<int, 4>, 6> faces = {{
      {0, 3, 2, 1},  // bottom (zeta = -1)
      {4, 5, 6, 7},  // top (zeta = +1)
      {0, 1, 5, 4},  // eta = -1
      {2, 3, 7, 6},  // eta = +1
      {1, 2, 6, 5},  // xi = +1
      {3, 0, 4, 7},  // xi = -1
  }};
  return faces.at(static_cast<size_t>(face));
}

void validate_mesh(const Mesh& mesh) {
  if (mesh.elements.empty())
    throw MeshGenerationFailed("mesh has no elements");
  for (int e = 0; e < mesh.n_elements(); ++e) {
    for (int a : mesh.elements[static_cast<size_t>(e)])
      if (a < 0 || a >= mesh.n_nodes())
        throw MeshGenerationFailed("element " + std::to_string(e) +
                                   " references node " + std::to_string(a) +
                                   " out of range");
    element_geometry(mesh, e);  // throws on nonpositive Gauss-point Jacobians
  }
  for (const auto& [name, set] : mesh.node_sets)
    for (int a : set)
      if (a < 0 || a >= mesh.n_nodes())
        throw MeshGenerationFailed("node set '" + name + "' is out of range");
  for (const auto& [name, set] : mesh.face_sets)
    for (const auto& ef : set)
      if (ef[0] < 0 || ef[0] >= mesh.n_elements() || ef[1] < 0 || ef[1] > 5)
        throw MeshGenerationFailed("face set '" + name + "' is out of range");
}

}  // namespace fem
}  // namespace anidamage
