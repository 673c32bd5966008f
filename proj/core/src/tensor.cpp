// SPDX-License-Identifier: Apache-2.0

#include "anidamage/tensor.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <numbers>

namespace anidamage {

namespace {

Eigen::Matrix3d to_eigen(const SymTensor2& t) {
  Eigen::Matrix3d m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = t(i, j);
  return m;
}

void fix_sign(Vec3& n) {
  for (int k = 0; k < 3; ++k) {
    if (std::abs(n[k]) > 1e-12) {
      if (n[k] < 0.0)
        for (int j = 0; j < 3; ++j) n[j] = -n[j];
      return;
    }
  }
}

}  // namespace

SymTensor2 inverse(const SymTensor2& t) {
  const double d = det(t);
  if (std::abs(d) < 1e-14 * std::max(1.0, std::pow(frobenius_norm(t), 3)))
    throw SingularTensor("SymTensor2 inverse: determinant below floor");
  const double id = 1.0 / d;
  SymTensor2 r;
  r[0] = (t.yy() * t.zz() - t.yz() * t.yz()) * id;
  r[1] = (t.xx() * t.zz() - t.xz() * t.xz()) * id;
  r[2] = (t.xx() * t.yy() - t.xy() * t.xy()) * id;
  r[3] = (t.xz() * t.yz() - t.xy() * t.zz()) * id;
  r[4] = (t.xy() * t.yz() - t.xz() * t.yy()) * id;
  r[5] = (t.xy() * t.xz() - t.yz() * t.xx()) * id;
  return r;
}

FullTensor2 inverse(const FullTensor2& t) {
  const double d = det(t);
  if (std::abs(d) < 1e-14) throw SingularTensor("FullTensor2 inverse: determinant below floor");
  const double id = 1.0 / d;
  FullTensor2 r;
  r(0, 0) = (t(1, 1) * t(2, 2) - t(1, 2) * t(2, 1)) * id;
  r(0, 1) = (t(0, 2) * t(2, 1) - t(0, 1) * t(2, 2)) * id;
  r(0, 2) = (t(0, 1) * t(1, 2) - t(0, 2) * t(1, 1)) * id;
  r(1, 0) = (t(1, 2) * t(2, 0) - t(1, 0) * t(2, 2)) * id;
  r(1, 1) = (t(0, 0) * t(2, 2) - t(0, 2) * t(2, 0)) * id;
  r(1, 2) = (t(0, 2) * t(1, 0) - t(0, 0) * t(1, 2)) * id;
  r(2, 0) = (t(1, 0) * t(2, 1) - t(1, 1) * t(2, 0)) * id;
  r(2, 1) = (t(0, 1) * t(2, 0) - t(0, 0) * t(2, 1)) * id;
  r(2, 2) = (t(0, 0) * t(1, 1) - t(0, 1) * t(1, 0)) * id;
  return r;
}

Spectral spectral_decompose(const SymTensor2& t) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(to_eigen(t));
  Spectral s;
  // Eigen returns ascending order; we store descending.
  for (int i = 0; i < 3; ++i) {
    s.values[i] = es.eigenvalues()(2 - i);
    for (int k = 0; k < 3; ++k) s.vectors[i][k] = es.eigenvectors()(k, 2 - i);
    fix_sign(s.vectors[i]);
  }
  return s;
}

std::array<double, 3> sym_eigenvalues(const SymTensor2& t) {
  // Trigonometric closed form for a real symmetric 3x3 matrix.
  const double q = trace(t) / 3.0;
  const SymTensor2 b = t - SymTensor2::diag(q, q, q);
  const double p2 = double_contract(b, b) / 6.0;
  if (p2 < 1e-300) return {q, q, q};
  const double p = std::sqrt(p2);
  double r = det(b) / (2.0 * p * p * p);
  r = std::clamp(r, -1.0, 1.0);
  const double phi = std::acos(r) / 3.0;
  const double l0 = q + 2.0 * p * std::cos(phi);
  const double l2 = q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
  const double l1 = 3.0 * q - l0 - l2;
  return {l0, l1, l2};  // descending by construction of the angles
}

SymTensor2 positive_part(const Spectral& s) {
  SymTensor2 r;
  for (int i = 0; i < 3; ++i)
    if (s.values[i] > 0.0) r += s.values[i] * SymTensor2::dyad(s.vectors[i]);
  return r;
}

SymTensor2 positive_part(const SymTensor2& t) {
  return positive_part(spectral_decompose(t));
}

SymTensor2 matrix_power(const SymTensor2& t, double p) {
  if (p == 1.0) return t;
  const Spectral s = spectral_decompose(t);
  SymTensor2 r;
  for (int i = 0; i < 3; ++i)
    r += std::pow(s.values[i], p) * SymTensor2::dyad(s.vectors[i]);
  return r;
}

SymTensor2 apply_positive_part_derivative(const Spectral& s, double base_norm,
                                          const SymTensor2& m) {
  const double tol = 1e-9 * std::max(1.0, base_norm);

  // Split near-degenerate eigenvalue clusters before forming the divided
  // differences; the function values keep using the exact eigenvalues.
  std::array<double, 3> lam = s.values;
  if (lam[0] - lam[2] < tol) {
    lam[0] += tol;
    lam[2] -= tol;
  } else {
    if (lam[0] - lam[1] < tol) lam[1] = lam[0] - tol;
    if (lam[1] - lam[2] < tol) lam[1] = lam[2] + tol;
  }

  // Components of m in the eigenbasis.
  double mh[3][3];
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) {
      mh[i][j] = dot(s.vectors[i], m.apply(s.vectors[j]));
      mh[j][i] = mh[i][j];
    }

  auto ramp = [](double x) { return x > 0.0 ? x : 0.0; };
  auto step = [](double x) { return x > 0.0 ? 1.0 : 0.0; };

  double rh[3][3];
  for (int i = 0; i < 3; ++i) rh[i][i] = step(s.values[i]) * mh[i][i];
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      const double theta = (ramp(lam[i]) - ramp(lam[j])) / (lam[i] - lam[j]);
      rh[i][j] = theta * mh[i][j];
      rh[j][i] = rh[i][j];
    }

  // Rotate back: r = sum_ij rh_ij n_i (x) n_j.
  SymTensor2 r;
  for (int i = 0; i < 3; ++i) {
    r += rh[i][i] * SymTensor2::dyad(s.vectors[i]);
    for (int j = i + 1; j < 3; ++j)
      r += 2.0 * rh[i][j] * SymTensor2::sym_dyad(s.vectors[i], s.vectors[j]);
  }
  return r;
}

Tensor4Sym positive_part_derivative(const SymTensor2& t) {
  const Spectral s = spectral_decompose(t);
  const double nrm = frobenius_norm(t);
  Tensor4Sym d;
  // Column-by-column through the apply form on the Mandel basis.
  for (int j = 0; j < 6; ++j) {
    std::array<double, 6> e{};
    e[j] = 1.0;
    const SymTensor2 basis = from_mandel(e);
    const auto col = to_mandel(apply_positive_part_derivative(s, nrm, basis));
    for (int i = 0; i < 6; ++i) d(i, j) = col[i];
  }
  return d;
}

Tensor4Sym Tensor4Sym::congruence(const SymTensor2& a) {
  Tensor4Sym t;
  for (int j = 0; j < 6; ++j) {
    std::array<double, 6> e{};
    e[j] = 1.0;
    const auto col = to_mandel(sandwich(a, from_mandel(e)));
    for (int i = 0; i < 6; ++i) t(i, j) = col[i];
  }
  return t;
}

}  // namespace anidamage
