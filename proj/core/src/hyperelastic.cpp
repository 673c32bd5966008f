// SPDX-License-Identifier: Apache-2.0

#include "anidamage/hyperelastic.hpp"

#include <cmath>
#include <string>

namespace anidamage {

void ElasticConstants::validate() const {
  if (!(mu > 0.0))
    throw ConfigError("elastic constants: mu must be positive, got " + std::to_string(mu));
  if (!(3.0 * lambda + 2.0 * mu > 0.0))
    throw ConfigError("elastic constants: 3*lambda + 2*mu must be positive");
}

namespace {

// ln is guarded: evaluation refuses det(C) <= 1e-12.
double checked_det(const SymTensor2& C) {
  const double d = det(C);
  if (!(d > 1e-12))
    throw NonPositiveJacobian("det(C) = " + std::to_string(d) + " out of range");
  return d;
}

}  // namespace

double NeoHooke::neo_hooke_energy(const SymTensor2& C, const ElasticConstants& k) {
  const double d = checked_det(C);
  const double ld = std::log(d);
  return 0.5 * k.mu * (trace(C) - 3.0 - ld) + 0.25 * k.lambda * (d - 1.0 - ld);
}

SymTensor2 NeoHooke::neo_hooke_stress(const SymTensor2& C, const ElasticConstants& k) {
  const double d = checked_det(C);
  const SymTensor2 Cinv = inverse(C);
  return k.mu * (SymTensor2::identity() - Cinv) +
         0.5 * k.lambda * (d - 1.0) * Cinv;
}

Tensor4Sym NeoHooke::neo_hooke_tangent(const SymTensor2& C, const ElasticConstants& k) {
  // 4 d2psi/dC2 = lambda*d * Cinv (x) Cinv
  //              - (lambda*(d-1) - 2 mu) * d(Cinv)/dC-part,
  // with (dCinv/dC)_ijkl = -1/2 (Cinv_ik Cinv_jl + Cinv_il Cinv_jk).
  const double d = checked_det(C);
  const SymTensor2 Cinv = inverse(C);

  Tensor4Sym t = Tensor4Sym::outer(Cinv, Cinv) * (k.lambda * d);

  const double a = k.lambda * (d - 1.0) - 2.0 * k.mu;
  // symmetrized Kronecker square of Cinv in Mandel form
  Tensor4Sym sq;
  for (int J = 0; J < 6; ++J) {
    std::array<double, 6> e{};
    e[J] = 1.0;
    const auto col = to_mandel(sandwich(Cinv, from_mandel(e)));
    for (int I = 0; I < 6; ++I) sq(I, J) = col[I];
  }
  t += sq * (-a);
  return t;
}

}  // namespace anidamage
