// SPDX-License-Identifier: Apache-2.0

#include "anidamage/material.hpp"

#include <string>

namespace anidamage {

void MaterialParams::validate(MicromorphicModel kind) const {
  elastic.validate();
  auto fail = [](const std::string& msg) { throw ConfigError("material: " + msg); };
  if (!(k_ani >= 0.0 && k_ani <= 1.0)) fail("k_ani must lie in [0,1]");
  if (!(e_d >= 1.0)) fail("e_d must be >= 1");
  if (!(f_d >= 1.0)) fail("f_d must be >= 1");
  if (!(Y0 > 0.0)) fail("Y0 must be positive");
  if (!(n_h > 1.0)) fail("n_h must be > 1");
  if (!(a_h > 0.0 && a_h < 1.0)) fail("a_h must lie in (0,1)");
  if (!(eta_v >= 0.0)) fail("eta_v must be >= 0");
  if (!(K_h >= 0.0)) fail("K_h must be >= 0");
  const size_t n = static_cast<size_t>(tuple_size(kind));
  if (H_micro.size() != n || A_micro.size() != n)
    fail("micromorphic parameter vectors must have length " + std::to_string(n));
  for (double h : H_micro)
    if (!(h >= 0.0)) fail("H_i must be >= 0");
  for (double a : A_micro)
    if (!(a >= 0.0)) fail("A_i must be >= 0");
  if (!law) fail("no hyperelastic law attached");
}

double default_gradient_parameter(MicromorphicModel kind) {
  switch (kind) {
    case MicromorphicModel::A: return 1000.0;
    case MicromorphicModel::B: return 300.0;
    case MicromorphicModel::C: return 3000.0;
  }
  return 0.0;
}

MaterialParams MaterialParams::set1(MicromorphicModel kind) {
  MaterialParams p;
  p.elastic = {5000.0, 7500.0};
  p.k_ani = 1.0;
  p.e_d = 2.0;
  p.f_d = 1.0;
  p.Y0 = 10.0;
  p.c_d = 1.0;
  p.H_d = 1.0;
  p.r_d = 10.0;
  p.s_d = 100.0;
  p.K_h = 0.1;
  p.n_h = 2.0;
  p.a_h = 0.999999;
  p.eta_v = 1.0;
  const size_t n = static_cast<size_t>(tuple_size(kind));
  p.H_micro.assign(n, 0.0);  // local formulation: no micromorphic coupling
  p.A_micro.assign(n, 0.0);
  p.attach_neo_hooke();
  return p;
}

MaterialParams MaterialParams::set2(MicromorphicModel kind) {
  MaterialParams p;
  p.elastic = {25000.0, 55000.0};
  p.k_ani = 1.0;
  p.e_d = 2.0;
  p.f_d = 1.0;
  p.Y0 = 2.5;
  p.c_d = 1.0;
  p.H_d = 1.0;
  p.r_d = 5.0;
  p.s_d = 100.0;
  p.K_h = 0.1;
  p.n_h = 2.0;
  p.a_h = 0.999999;
  p.eta_v = 1.0;
  const size_t n = static_cast<size_t>(tuple_size(kind));
  p.H_micro.assign(n, 1.0e4);
  p.A_micro.assign(n, default_gradient_parameter(kind));
  p.attach_neo_hooke();
  return p;
}

}  // namespace anidamage
