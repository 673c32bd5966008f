// SPDX-License-Identifier: Apache-2.0
//
// Material and numerical parameters for the anisotropic damage model, with
// the two bundled parameter sets ("set1" for homogeneous studies, "set2"
// for structural runs).
#pragma once

#include <memory>
#include <vector>

#include "anidamage/hyperelastic.hpp"
#include "anidamage/micromorphic.hpp"

namespace anidamage {

struct MaterialParams {
  ElasticConstants elastic;  // MPa

  double k_ani = 1.0;  // degree of damage anisotropy, in [0,1]
  double e_d = 2.0;    // exponent of the isotropic degradation function, >= 1
  double f_d = 1.0;    // exponent of the anisotropic degradation function, >= 1
  double Y0 = 10.0;    // initial damage threshold (MPa)
  double c_d = 1.0;    // distortional hardening exponent
  double H_d = 1.0;    // linear isotropic hardening prefactor (MPa)
  double r_d = 10.0;   // nonlinear isotropic hardening prefactor (MPa)
  double s_d = 100.0;  // nonlinear isotropic hardening scaling factor
  double K_h = 0.1;    // kinematic hardening prefactor (MPa)
  double n_h = 2.0;    // kinematic hardening exponent, > 1
  double a_h = 0.999999;  // Taylor series sampling point, in (0,1)
  double eta_v = 1.0;     // artificial viscosity (MPa s)

  // Per-nonlocal-DOF micromorphic penalty (MPa) and gradient (MPa mm^2)
  // parameters; length must equal tuple_size(kind) of the model in use.
  std::vector<double> H_micro;
  std::vector<double> A_micro;

  // Numerical controls of the local return mapping.
  int max_local_iters = 50;
  double local_tol_factor = 1e-10;  // tolerance = local_tol_factor * Y0

  // Hyperelastic energy; defaults to Neo-Hooke on `elastic`.
  std::shared_ptr<const HyperelasticLaw> law;

  const HyperelasticLaw& hyperelastic() const {
    if (!law) throw ConfigError("MaterialParams: no hyperelastic law attached");
    return *law;
  }

  void attach_neo_hooke() { law = std::make_shared<NeoHooke>(elastic); }
  void validate(MicromorphicModel kind) const;

  static MaterialParams set1(MicromorphicModel kind);
  static MaterialParams set2(MicromorphicModel kind);
};

// Default gradient parameter of each model for the structural preset
// (MPa mm^2): A -> 1000, B -> 300, C -> 3000.
double default_gradient_parameter(MicromorphicModel kind);

}  // namespace anidamage
