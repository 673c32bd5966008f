// SPDX-License-Identifier: Apache-2.0
//
// Trilinear hexahedron with full 2x2x2 integration carrying 3 displacement
// DOFs plus n_dbar equal-order nonlocal DOFs per node. Element vectors are
// ordered displacement block first (24 entries), then the nonlocal block
// (8 * n_dbar entries, node-major).
#pragma once

#include <Eigen/Dense>
#include <span>

#include "anidamage/damage_point.hpp"
#include "anidamage/fem/mesh.hpp"

namespace anidamage {
namespace fem {

// Shape values and local-coordinate gradients at xi in [-1,1]^3.
void shape_hex8(const Vec3& xi, std::array<double, 8>& N,
                std::array<Vec3, 8>& dN_local);

struct GaussPoint {
  std::array<double, 8> N;
  std::array<Vec3, 8> dN;  // gradients w.r.t. reference coordinates
  double weight = 0.0;     // Gauss weight times reference detJ
};

struct ElementGeometry {
  std::array<GaussPoint, 8> gp;
  std::array<int, 8> nodes{};
};

// Precomputes reference shape gradients; throws MeshGenerationFailed on a
// nonpositive reference Jacobian.
ElementGeometry element_geometry(const Mesh& mesh, int elem);

struct ElementModel {
  const MaterialParams* params = nullptr;
  MicromorphicModel kind = MicromorphicModel::C;
  int n_dbar() const { return tuple_size(kind); }
  int n_elem_dofs() const { return 24 + 8 * n_dbar(); }
};

// Per-Gauss-point extras captured during a residual evaluation.
struct ElementScratch {
  std::array<PointResponse, 8> responses;
  double stored_energy = 0.0;  // integral of psi over the element
};

void element_residual(const ElementGeometry& geom, const ElementModel& model,
                      std::span<const double> ue, std::span<const double> de,
                      std::span<const InternalState> states_n, double dt,
                      std::span<double> r_u, std::span<double> r_d,
                      std::span<InternalState> states_out,
                      ElementScratch* scratch = nullptr);

enum class TangentMode {
  ResidualFd,  // central differences of the full element residual
  PointFd      // consistent point tangents (themselves central FD) + chain rule
};

void element_tangent(const ElementGeometry& geom, const ElementModel& model,
                     std::span<const double> ue, std::span<const double> de,
                     std::span<const InternalState> states_n, double dt,
                     Eigen::MatrixXd& K, TangentMode mode,
                     double rel_step = 1e-6);

// Follower pressure on a bilinear quad face of the deformed surface.
// Returns the external nodal forces (12 entries); the residual subtracts
// them. X are reference positions, u displacements of the face nodes.
void face_pressure_force(const std::array<Vec3, 4>& X,
                         const std::array<Vec3, 4>& u, double p,
                         std::array<double, 12>& f);

// d(force)/d(face displacements) by central differences, 12x12.
void face_pressure_tangent(const std::array<Vec3, 4>& X,
                           const std::array<Vec3, 4>& u, double p,
                           Eigen::MatrixXd& K, double rel_step = 1e-6);

}  // namespace fem
}  // namespace anidamage
