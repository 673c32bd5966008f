// SPDX-License-Identifier: Apache-2.0
//
// Test-side oracles, independent of the library implementation paths they
// check: characteristic-polynomial eigenvalues, index-loop contractions and
// finite-difference derivative probes.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <random>

#include "anidamage/tensor.hpp"

namespace oracle {

using anidamage::FullTensor2;
using anidamage::SymTensor2;

// Eigenvalues (descending) of a symmetric 3x3 matrix by solving the
// characteristic cubic with Cardano's trigonometric form written directly
// from the invariants; no shared code with the library's solvers.
inline std::array<double, 3> charpoly_eigenvalues(const SymTensor2& t) {
  const double a11 = t(0, 0), a22 = t(1, 1), a33 = t(2, 2);
  const double a12 = t(0, 1), a13 = t(0, 2), a23 = t(1, 2);
  const double I1 = a11 + a22 + a33;
  const double I2 = a11 * a22 + a22 * a33 + a11 * a33 - a12 * a12 - a13 * a13 - a23 * a23;
  const double I3 = a11 * (a22 * a33 - a23 * a23) - a12 * (a12 * a33 - a23 * a13) +
                    a13 * (a12 * a23 - a22 * a13);
  // depressed cubic x^3 + px + q with lambda = x + I1/3
  const double p = I2 - I1 * I1 / 3.0;
  const double q = -2.0 * I1 * I1 * I1 / 27.0 + I1 * I2 / 3.0 - I3;
  const double m = I1 / 3.0;
  if (p > -1e-300) return {m, m, m};
  const double r = std::sqrt(-p / 3.0);
  double arg = -q / (2.0 * r * r * r);
  arg = std::min(1.0, std::max(-1.0, arg));
  const double phi = std::acos(arg) / 3.0;
  std::array<double, 3> lam = {m + 2.0 * r * std::cos(phi),
                               m + 2.0 * r * std::cos(phi - 2.0 * M_PI / 3.0),
                               m + 2.0 * r * std::cos(phi - 4.0 * M_PI / 3.0)};
  std::sort(lam.begin(), lam.end(), std::greater<double>());
  return lam;
}

// Plain index-loop double contraction on full 3x3 expansions.
inline double loop_double_contract(const SymTensor2& a, const SymTensor2& b) {
  double s = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s += a(i, j) * b(i, j);
  return s;
}

// Central difference gradient of a scalar in a symmetric tensor argument:
// returns G with df = G : dX.
inline SymTensor2 fd_sym_gradient(const std::function<double(const SymTensor2&)>& f,
                                  const SymTensor2& X, double h) {
  SymTensor2 g;
  for (int k = 0; k < 6; ++k) {
    SymTensor2 xp = X, xm = X;
    xp[k] += h;
    xm[k] -= h;
    const double d = (f(xp) - f(xm)) / (2.0 * h);
    g[k] = k < 3 ? d : 0.5 * d;
  }
  return g;
}

// Central difference of a tensor-valued function of a symmetric tensor,
// reported as the Mandel matrix of the Jacobian map dF = J : dX.
inline anidamage::Tensor4Sym fd_sym_jacobian(
    const std::function<SymTensor2(const SymTensor2&)>& f, const SymTensor2& X,
    double h) {
  anidamage::Tensor4Sym jac;
  for (int k = 0; k < 6; ++k) {
    SymTensor2 xp = X, xm = X;
    xp[k] += h;
    xm[k] -= h;
    const auto col = anidamage::to_mandel((f(xp) - f(xm)) * (1.0 / (2.0 * h)));
    for (int i = 0; i < 6; ++i)
      jac(i, k) = col[static_cast<size_t>(i)] / anidamage::kMandelFactor[k];
  }
  return jac;
}

inline SymTensor2 random_sym(std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  return {u(rng), u(rng), u(rng), u(rng), u(rng), u(rng)};
}

inline FullTensor2 random_deformation(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (;;) {
    FullTensor2 f = FullTensor2::identity();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) f(i, j) += 0.5 * u(rng);
    if (anidamage::det(f) >= 0.3) return f;
  }
}

inline SymTensor2 random_cauchy_green(std::mt19937_64& rng) {
  return anidamage::right_cauchy_green(random_deformation(rng));
}

inline SymTensor2 random_psd(std::mt19937_64& rng, double max_eig) {
  std::uniform_real_distribution<double> u(0.0, max_eig);
  const SymTensor2 s = random_sym(rng, 1.0);
  const auto sp = anidamage::spectral_decompose(s);
  SymTensor2 d;
  for (int i = 0; i < 3; ++i)
    d += u(rng) * SymTensor2::dyad(sp.vectors[static_cast<size_t>(i)]);
  return d;
}

}  // namespace oracle
