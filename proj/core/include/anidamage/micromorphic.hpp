// SPDX-License-Identifier: Apache-2.0
//
// Micromorphic tuple definitions (models A, B, C), their derivatives, the
// nonlocal driving force and the generalized stresses. Model A penalizes all
// six damage components through structural tensors, model B the principal
// traces (tr D, tr D^2, tr D^3), model C the volumetric/deviatoric pair
// (tr D / 3, tr((dev D)^2)).
#pragma once

#include <array>
#include <span>

#include "anidamage/tensor.hpp"

namespace anidamage {

enum class MicromorphicModel { A, B, C };

constexpr int kMaxNonlocal = 6;

constexpr int tuple_size(MicromorphicModel kind) {
  switch (kind) {
    case MicromorphicModel::A: return 6;
    case MicromorphicModel::B: return 3;
    case MicromorphicModel::C: return 2;
  }
  return 0;
}

const char* to_string(MicromorphicModel kind);
MicromorphicModel micromorphic_model_from_string(std::string_view s);

// Structural tensors M_1..M_6 of model A, as sym(M_i).
const SymTensor2& structural_tensor_sym(int i);

// Nonlocal field values and reference gradients at a point.
struct NonlocalState {
  int n = 0;
  std::array<double, kMaxNonlocal> dbar{};
  std::array<Vec3, kMaxNonlocal> grad{};
};

void tuple_value(const SymTensor2& D, MicromorphicModel kind,
                 std::span<double> out);
void tuple_derivative(const SymTensor2& D, MicromorphicModel kind,
                      std::span<SymTensor2> out);

// Y_dbar = sum_i H_i (d_i(D) - dbar_i) d(d_i)/dD.
SymTensor2 nonlocal_driving_force(const SymTensor2& D,
                                  std::span<const double> dbar,
                                  MicromorphicModel kind,
                                  std::span<const double> H);

// xi0_k = -H_k (d_k - dbar_k);  Xi0_k = A_k Grad dbar_k.
void generalized_stresses(std::span<const double> d,
                          std::span<const double> dbar,
                          std::span<const Vec3> grad_dbar,
                          std::span<const double> H, std::span<const double> A,
                          std::span<double> xi0, std::span<Vec3> Xi0);

// psi_dbar = 1/2 sum H_i (d_i - dbar_i)^2 + 1/2 sum A_i |Grad dbar_i|^2.
double micromorphic_energy(std::span<const double> d,
                           std::span<const double> dbar,
                           std::span<const Vec3> grad_dbar,
                           std::span<const double> H,
                           std::span<const double> A);

}  // namespace anidamage
