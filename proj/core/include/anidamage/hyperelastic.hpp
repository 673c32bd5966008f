// SPDX-License-Identifier: Apache-2.0
//
// Pluggable hyperelastic energy psi(C) with first and second derivatives.
// Conventions: stress2pk = 2 dpsi/dC (second Piola-Kirchhoff), tangent =
// 4 d2psi/dC2 (so tangent : dE = dS).
#pragma once

#include <memory>

#include "anidamage/tensor.hpp"

namespace anidamage {

struct ElasticConstants {
  double lambda = 0.0;  // first Lame constant (MPa)
  double mu = 0.0;      // second Lame constant (MPa)

  double bulk_modulus() const { return lambda + 2.0 * mu / 3.0; }
  double youngs_modulus() const {
    return mu * (3.0 * lambda + 2.0 * mu) / (lambda + mu);
  }
  void validate() const;  // mu > 0, 3*lambda + 2*mu > 0
};

class HyperelasticLaw {
public:
  virtual ~HyperelasticLaw() = default;
  virtual double energy(const SymTensor2& C) const = 0;
  virtual SymTensor2 stress2pk(const SymTensor2& C) const = 0;
  virtual Tensor4Sym tangent(const SymTensor2& C) const = 0;
};

// Compressible Neo-Hooke:
//   psi = mu/2 (tr C - 3 - ln det C) + lambda/4 (det C - 1 - ln det C).
class NeoHooke final : public HyperelasticLaw {
public:
  explicit NeoHooke(ElasticConstants k) : k_(k) { k.validate(); }

  double energy(const SymTensor2& C) const override {
    return neo_hooke_energy(C, k_);
  }
  SymTensor2 stress2pk(const SymTensor2& C) const override {
    return neo_hooke_stress(C, k_);
  }
  Tensor4Sym tangent(const SymTensor2& C) const override {
    return neo_hooke_tangent(C, k_);
  }

  const ElasticConstants& constants() const { return k_; }

  static double neo_hooke_energy(const SymTensor2& C, const ElasticConstants& k);
  static SymTensor2 neo_hooke_stress(const SymTensor2& C, const ElasticConstants& k);
  static Tensor4Sym neo_hooke_tangent(const SymTensor2& C, const ElasticConstants& k);

private:
  ElasticConstants k_;
};

inline double neo_hooke_energy(const SymTensor2& C, const ElasticConstants& k) {
  return NeoHooke::neo_hooke_energy(C, k);
}
inline SymTensor2 neo_hooke_stress(const SymTensor2& C, const ElasticConstants& k) {
  return NeoHooke::neo_hooke_stress(C, k);
}
inline Tensor4Sym neo_hooke_tangent(const SymTensor2& C, const ElasticConstants& k) {
  return NeoHooke::neo_hooke_tangent(C, k);
}

}  // namespace anidamage
