// SPDX-License-Identifier: Apache-2.0
//
// Local constitutive update for finite-strain anisotropic damage: degraded
// elastic energy, hardening energies, driving forces, the onset function and
// the viscously regularized return mapping that advances (D, xi_d) over a
// time step. All functions are pure; integration points can be processed in
// parallel.
#pragma once

#include <array>
#include <span>
#include <utility>

#include "anidamage/material.hpp"
#include "anidamage/micromorphic.hpp"
#include "anidamage/tensor.hpp"

namespace anidamage {

struct InternalState {
  SymTensor2 D;      // symmetric, eigenvalues in [0,1)
  double xi_d = 0.0; // accumulated damage hardening, nondecreasing
};

// Consistent tangent blocks of the converged point map, by central finite
// differences of point_update (each perturbation re-runs the local solve).
// dS_dC is the Mandel matrix of the Jacobian dS = (dS_dC) : dC; note the
// continuum tangent 4 d2psi/dC2 equals 2 * dS_dC.
struct TangentBlocks {
  int n_dbar = 0;
  Tensor4Sym dS_dC;
  std::array<SymTensor2, kMaxNonlocal> dS_ddbar{};
  std::array<SymTensor2, kMaxNonlocal> dxi0_dC{};
  std::array<std::array<double, kMaxNonlocal>, kMaxNonlocal> dxi0_ddbar{};
};

struct PointResponse {
  SymTensor2 S;       // second Piola-Kirchhoff stress (MPa)
  SymTensor2 Y;       // total damage driving force = Y_e - Y_h - Y_dbar
  SymTensor2 Y_e;
  SymTensor2 Y_h;
  SymTensor2 Y_dbar;
  double R_d = 0.0;
  int n_dbar = 0;
  std::array<double, kMaxNonlocal> d{};    // micromorphic tuple at D_{n+1}
  std::array<double, kMaxNonlocal> xi0{};  // generalized stresses -H_k(d_k - dbar_k)
  double dgamma = 0.0;                     // damage multiplier increment, >= 0
  double phi = 0.0;                        // onset function at the converged state
  int local_iters = 0;
  // Stored energy densities at the converged state (for the energy ledger).
  double psi_e = 0.0, psi_d = 0.0, psi_h = 0.0;
};

// --- degradation functions and their derivatives ---------------------------
double f_iso(const SymTensor2& D, const MaterialParams& p);
double f_ani(const SymTensor2& C, const SymTensor2& D, const MaterialParams& p);
SymTensor2 dfiso_dD(const SymTensor2& D, const MaterialParams& p);
SymTensor2 dfani_dD(const SymTensor2& C, const SymTensor2& D, const MaterialParams& p);
SymTensor2 dfani_dC(const SymTensor2& C, const SymTensor2& D, const MaterialParams& p);

// --- energies ---------------------------------------------------------------
double psi_e(const SymTensor2& C, const SymTensor2& D, const MaterialParams& p);
double psi_d(double xi_d, const MaterialParams& p);
double psi_h(const SymTensor2& D, const MaterialParams& p);

// --- stresses and driving forces -------------------------------------------
SymTensor2 stress(const SymTensor2& C, const SymTensor2& D, const MaterialParams& p);
SymTensor2 driving_force_elastic(const SymTensor2& C, const SymTensor2& D,
                                 const MaterialParams& p);
SymTensor2 driving_force_kinematic(const SymTensor2& D, const MaterialParams& p);
double hardening_force(double xi_d, const MaterialParams& p);  // R_d <= 0

// Scalar branch of the kinematic hardening force: (1-x)^(-1/n_h) continued by
// its second-order Taylor expansion about a_h for x > a_h.
double kinematic_branch(double x, const MaterialParams& p);

// --- onset and flow ---------------------------------------------------------
Tensor4Sym interaction_tensor(const SymTensor2& D, const MaterialParams& p);

double onset_function(const SymTensor2& Y, const SymTensor2& D, double xi_d,
                      const MaterialParams& p);

// Flow direction dPhi/dY at (Y, D); also reports q = Y+ : A : Y+. The
// direction is zero when q vanishes.
SymTensor2 flow_direction(const SymTensor2& Y, const SymTensor2& D,
                          const MaterialParams& p, double* q_out = nullptr);

// --- return mapping ---------------------------------------------------------
std::pair<InternalState, PointResponse> point_update(
    const SymTensor2& C, std::span<const double> dbar,
    const InternalState& state_n, double dt, const MaterialParams& p,
    MicromorphicModel kind);

TangentBlocks consistent_tangent(const SymTensor2& C,
                                 std::span<const double> dbar,
                                 const InternalState& state_n, double dt,
                                 const MaterialParams& p,
                                 MicromorphicModel kind,
                                 double rel_step = 1e-6);

}  // namespace anidamage
