// SPDX-License-Identifier: Apache-2.0
//
// Mesh generators for the bundled studies plus plain-text and Gmsh (v2.2
// ASCII) importers. The notched-specimen generator builds a body-fitted
// structured grid honoring both semicircular notches, extruded one element
// through the thickness; elements are numbered row-major (x index fastest).
#pragma once

#include <filesystem>
#include <functional>

#include "anidamage/fem/mesh.hpp"

namespace anidamage {
namespace scenario {

// Axis-aligned box [0,sx]x[0,sy]x[0,sz] with nx*ny*nz elements and node sets
// "bottom"/"top" (z extremes), "left"/"right" (x), "front"/"back" (y), plus
// face sets "top_faces" and "bottom_faces".
fem::Mesh box_mesh(int nx, int ny, int nz, double sx, double sy, double sz);

inline fem::Mesh unit_cube_mesh() { return box_mesh(1, 1, 1, 1.0, 1.0, 1.0); }

// Asymmetrically notched plane-strain specimen: 100 mm x 36 mm x 1 mm with
// 5 mm edge notches centered at heights 60 mm (left) and 40 mm (right).
// nx*ny elements in-plane, one through the thickness. Node sets "bottom" and
// "top" are the y extremes. Element (i,j) has index j*nx + i.
struct NotchedLayout {
  int nx = 0, ny = 0;
  double length = 100.0, width = 36.0, radius = 5.0;
  double y_left = 60.0, y_right = 40.0;
};
fem::Mesh notched_mesh(int nx, int ny, NotchedLayout* layout = nullptr);

// Standard level names used by the presets: coarse ~400, medium ~900,
// fine ~1600 elements.
void notched_level_dims(const std::string& level, int& nx, int& ny);

std::vector<int> nodes_where(const fem::Mesh& mesh,
                             const std::function<bool(const Vec3&)>& pred);

// Plain-text format (see the format reference in the repository docs).
fem::Mesh read_mesh_text(const std::filesystem::path& path);
void write_mesh_text(const fem::Mesh& mesh, const std::filesystem::path& path);

// Gmsh legacy ASCII v2.2; hexahedra only, physical volume groups become
// element sets, physical surface groups are ignored.
fem::Mesh read_mesh_gmsh(const std::filesystem::path& path);

// Dispatch by extension: ".msh" -> Gmsh, anything else -> text.
fem::Mesh read_mesh_file(const std::filesystem::path& path);

}  // namespace scenario
}  // namespace anidamage
