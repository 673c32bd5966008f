// SPDX-License-Identifier: Apache-2.0
//
// Symmetric second-order and minor-symmetric fourth-order tensor algebra in
// 3D: the fixed-size building blocks for all constitutive work. Component
// convention is (xx, yy, zz, xy, xz, yz); fourth-order tensors are stored as
// 6x6 Mandel matrices (sqrt(2) scaling on shear slots) so that the double
// contraction equals the plain matrix inner product.
#pragma once

#include <array>
#include <cmath>
#include <cstddef>

#include "anidamage/errors.hpp"

namespace anidamage {

using Vec3 = std::array<double, 3>;

inline double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

// ---------------------------------------------------------------------------
// SymTensor2: symmetric second-order tensor, six stored components.
// ---------------------------------------------------------------------------
class SymTensor2 {
public:
  SymTensor2() : v_{} {}
  SymTensor2(double xx, double yy, double zz, double xy, double xz, double yz)
      : v_{xx, yy, zz, xy, xz, yz} {}

  static SymTensor2 identity() { return {1.0, 1.0, 1.0, 0.0, 0.0, 0.0}; }
  static SymTensor2 zero() { return {}; }
  static SymTensor2 diag(double a, double b, double c) {
    return {a, b, c, 0.0, 0.0, 0.0};
  }
  // n (x) n
  static SymTensor2 dyad(const Vec3& n) {
    return {n[0] * n[0], n[1] * n[1], n[2] * n[2],
            n[0] * n[1], n[0] * n[2], n[1] * n[2]};
  }
  // sym(a (x) b)
  static SymTensor2 sym_dyad(const Vec3& a, const Vec3& b) {
    return {a[0] * b[0], a[1] * b[1], a[2] * b[2],
            0.5 * (a[0] * b[1] + a[1] * b[0]),
            0.5 * (a[0] * b[2] + a[2] * b[0]),
            0.5 * (a[1] * b[2] + a[2] * b[1])};
  }

  double& operator[](int k) { return v_[k]; }
  double operator[](int k) const { return v_[k]; }

  double operator()(int i, int j) const { return v_[index(i, j)]; }
  double& at(int i, int j) { return v_[index(i, j)]; }

  double xx() const { return v_[0]; }
  double yy() const { return v_[1]; }
  double zz() const { return v_[2]; }
  double xy() const { return v_[3]; }
  double xz() const { return v_[4]; }
  double yz() const { return v_[5]; }

  SymTensor2& operator+=(const SymTensor2& o) {
    for (int k = 0; k < 6; ++k) v_[k] += o.v_[k];
    return *this;
  }
  SymTensor2& operator-=(const SymTensor2& o) {
    for (int k = 0; k < 6; ++k) v_[k] -= o.v_[k];
    return *this;
  }
  SymTensor2& operator*=(double s) {
    for (int k = 0; k < 6; ++k) v_[k] *= s;
    return *this;
  }

  friend SymTensor2 operator+(SymTensor2 a, const SymTensor2& b) { return a += b; }
  friend SymTensor2 operator-(SymTensor2 a, const SymTensor2& b) { return a -= b; }
  friend SymTensor2 operator*(SymTensor2 a, double s) { return a *= s; }
  friend SymTensor2 operator*(double s, SymTensor2 a) { return a *= s; }
  friend SymTensor2 operator-(const SymTensor2& a) {
    return {-a.v_[0], -a.v_[1], -a.v_[2], -a.v_[3], -a.v_[4], -a.v_[5]};
  }

  Vec3 apply(const Vec3& x) const {
    return {v_[0] * x[0] + v_[3] * x[1] + v_[4] * x[2],
            v_[3] * x[0] + v_[1] * x[1] + v_[5] * x[2],
            v_[4] * x[0] + v_[5] * x[1] + v_[2] * x[2]};
  }

  static int index(int i, int j) {
    static constexpr int map[3][3] = {{0, 3, 4}, {3, 1, 5}, {4, 5, 2}};
    return map[i][j];
  }

private:
  std::array<double, 6> v_;
};

// ---------------------------------------------------------------------------
// FullTensor2: general (not necessarily symmetric) second-order tensor.
// ---------------------------------------------------------------------------
class FullTensor2 {
public:
  FullTensor2() : v_{} {}
  explicit FullTensor2(const std::array<double, 9>& v) : v_(v) {}

  static FullTensor2 identity() {
    FullTensor2 t;
    t(0, 0) = t(1, 1) = t(2, 2) = 1.0;
    return t;
  }
  static FullTensor2 from_sym(const SymTensor2& s) {
    FullTensor2 t;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) t(i, j) = s(i, j);
    return t;
  }

  double& operator()(int i, int j) { return v_[3 * i + j]; }
  double operator()(int i, int j) const { return v_[3 * i + j]; }

  FullTensor2& operator+=(const FullTensor2& o) {
    for (int k = 0; k < 9; ++k) v_[k] += o.v_[k];
    return *this;
  }
  friend FullTensor2 operator+(FullTensor2 a, const FullTensor2& b) { return a += b; }
  friend FullTensor2 operator*(FullTensor2 a, double s) {
    for (int k = 0; k < 9; ++k) a.v_[k] *= s;
    return a;
  }

  FullTensor2 transpose() const {
    FullTensor2 t;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) t(i, j) = (*this)(j, i);
    return t;
  }

  Vec3 apply(const Vec3& x) const {
    return {v_[0] * x[0] + v_[1] * x[1] + v_[2] * x[2],
            v_[3] * x[0] + v_[4] * x[1] + v_[5] * x[2],
            v_[6] * x[0] + v_[7] * x[1] + v_[8] * x[2]};
  }

private:
  std::array<double, 9> v_;
};

inline FullTensor2 matmul(const FullTensor2& a, const FullTensor2& b) {
  FullTensor2 c;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  return c;
}

inline double det(const FullTensor2& t) {
  return t(0, 0) * (t(1, 1) * t(2, 2) - t(1, 2) * t(2, 1)) -
         t(0, 1) * (t(1, 0) * t(2, 2) - t(1, 2) * t(2, 0)) +
         t(0, 2) * (t(1, 0) * t(2, 1) - t(1, 1) * t(2, 0));
}

// C = F^T F, symmetric by construction.
inline SymTensor2 right_cauchy_green(const FullTensor2& f) {
  SymTensor2 c;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += f(k, i) * f(k, j);
      c.at(i, j) = s;
    }
  return c;
}

// ---------------------------------------------------------------------------
// Scalar-valued operations.
// ---------------------------------------------------------------------------
inline double trace(const SymTensor2& t) { return t[0] + t[1] + t[2]; }

inline double double_contract(const SymTensor2& a, const SymTensor2& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] +
         2.0 * (a[3] * b[3] + a[4] * b[4] + a[5] * b[5]);
}

inline double frobenius_norm(const SymTensor2& t) {
  return std::sqrt(double_contract(t, t));
}

inline double det(const SymTensor2& t) {
  return t.xx() * (t.yy() * t.zz() - t.yz() * t.yz()) -
         t.xy() * (t.xy() * t.zz() - t.yz() * t.xz()) +
         t.xz() * (t.xy() * t.yz() - t.yy() * t.xz());
}

inline SymTensor2 deviator(const SymTensor2& t) {
  const double p = trace(t) / 3.0;
  return {t[0] - p, t[1] - p, t[2] - p, t[3], t[4], t[5]};
}

// Product of two symmetric tensors; not symmetric in general.
inline FullTensor2 matrix_product(const SymTensor2& a, const SymTensor2& b) {
  FullTensor2 c;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  return c;
}

inline SymTensor2 symmetrize(const FullTensor2& t) {
  return {t(0, 0), t(1, 1), t(2, 2),
          0.5 * (t(0, 1) + t(1, 0)),
          0.5 * (t(0, 2) + t(2, 0)),
          0.5 * (t(1, 2) + t(2, 1))};
}

// A B A for symmetric A, B (symmetric result).
inline SymTensor2 sandwich(const SymTensor2& a, const SymTensor2& b) {
  return symmetrize(matmul(FullTensor2::from_sym(a), matrix_product(b, a)));
}

// t^2 as a symmetric tensor.
inline SymTensor2 square(const SymTensor2& t) {
  return symmetrize(matrix_product(t, t));
}

SymTensor2 inverse(const SymTensor2& t);      // throws SingularTensor
FullTensor2 inverse(const FullTensor2& t);    // throws SingularTensor

// ---------------------------------------------------------------------------
// Spectral decomposition.
// ---------------------------------------------------------------------------
struct Spectral {
  // Eigenvalues in descending order; eigenvectors unit and mutually
  // orthogonal, sign-fixed so the first component above 1e-12 is positive.
  std::array<double, 3> values;
  std::array<Vec3, 3> vectors;

  SymTensor2 reconstruct() const {
    SymTensor2 r;
    for (int i = 0; i < 3; ++i) r += values[i] * SymTensor2::dyad(vectors[i]);
    return r;
  }
};

Spectral spectral_decompose(const SymTensor2& t);

// Eigenvalues only (descending), via the closed-form trigonometric solution.
std::array<double, 3> sym_eigenvalues(const SymTensor2& t);

// Sum over max(lambda_i, 0) n_i (x) n_i.
SymTensor2 positive_part(const Spectral& s);
SymTensor2 positive_part(const SymTensor2& t);

// (I - D)-style matrix powers and general isotropic functions of a tensor.
SymTensor2 matrix_power(const SymTensor2& t, double p);  // via spectral form

// Directional derivative of the spectral positive-part map: returns P+ : M
// where P+ = d(positive_part)/dt evaluated at the decomposition `s` of the
// base tensor whose Frobenius norm is `base_norm`. Eigenvalue pairs closer
// than 1e-9*max(1, base_norm) are split by +-1e-9*max(1, base_norm) before
// the divided differences are formed (the values themselves stay exact).
SymTensor2 apply_positive_part_derivative(const Spectral& s, double base_norm,
                                          const SymTensor2& m);

// ---------------------------------------------------------------------------
// Tensor4Sym: minor-symmetric fourth-order tensor as a 6x6 Mandel matrix.
// ---------------------------------------------------------------------------
inline constexpr std::array<double, 6> kMandelFactor = {
    1.0, 1.0, 1.0, 1.4142135623730951, 1.4142135623730951, 1.4142135623730951};

inline std::array<double, 6> to_mandel(const SymTensor2& t) {
  std::array<double, 6> m;
  for (int k = 0; k < 6; ++k) m[k] = kMandelFactor[k] * t[k];
  return m;
}

inline SymTensor2 from_mandel(const std::array<double, 6>& m) {
  SymTensor2 t;
  for (int k = 0; k < 6; ++k) t[k] = m[k] / kMandelFactor[k];
  return t;
}

class Tensor4Sym {
public:
  Tensor4Sym() : v_{} {}

  static Tensor4Sym identity() {  // symmetric fourth-order identity
    Tensor4Sym t;
    for (int k = 0; k < 6; ++k) t(k, k) = 1.0;
    return t;
  }
  // a (x) b, i.e. (a (x) b) : x = (b : x) a.
  static Tensor4Sym outer(const SymTensor2& a, const SymTensor2& b) {
    Tensor4Sym t;
    const auto ma = to_mandel(a), mb = to_mandel(b);
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) t(i, j) = ma[i] * mb[j];
    return t;
  }
  // Mandel matrix of the congruence map x -> a x a (a symmetric).
  static Tensor4Sym congruence(const SymTensor2& a);

  double& operator()(int i, int j) { return v_[6 * i + j]; }
  double operator()(int i, int j) const { return v_[6 * i + j]; }

  Tensor4Sym& operator+=(const Tensor4Sym& o) {
    for (int k = 0; k < 36; ++k) v_[k] += o.v_[k];
    return *this;
  }
  friend Tensor4Sym operator+(Tensor4Sym a, const Tensor4Sym& b) { return a += b; }
  friend Tensor4Sym operator-(Tensor4Sym a, const Tensor4Sym& b) {
    for (int k = 0; k < 36; ++k) a.v_[k] -= b.v_[k];
    return a;
  }
  friend Tensor4Sym operator*(Tensor4Sym a, double s) {
    for (int k = 0; k < 36; ++k) a.v_[k] *= s;
    return a;
  }
  friend Tensor4Sym operator*(double s, Tensor4Sym a) { return a * s; }

  // Double contraction with a second-order tensor: (T : x).
  SymTensor2 apply(const SymTensor2& x) const {
    const auto mx = to_mandel(x);
    std::array<double, 6> r{};
    for (int i = 0; i < 6; ++i) {
      double s = 0.0;
      for (int j = 0; j < 6; ++j) s += (*this)(i, j) * mx[j];
      r[i] = s;
    }
    return from_mandel(r);
  }

  Tensor4Sym transpose() const {
    Tensor4Sym t;
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) t(i, j) = (*this)(j, i);
    return t;
  }

  double max_asymmetry() const {
    double m = 0.0;
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j)
        m = std::max(m, std::abs((*this)(i, j) - (*this)(j, i)));
    return m;
  }

  // Full tensor component T_ijkl recovered from the Mandel matrix.
  double component(int i, int j, int k, int l) const {
    const int a = SymTensor2::index(i, j), b = SymTensor2::index(k, l);
    return (*this)(a, b) / (kMandelFactor[a] * kMandelFactor[b]);
  }

  double frobenius() const {
    double s = 0.0;
    for (double x : v_) s += x * x;
    return std::sqrt(s);
  }

private:
  std::array<double, 36> v_;
};

// Map composition (A : B as linear maps on symmetric tensors).
inline Tensor4Sym compose(const Tensor4Sym& a, const Tensor4Sym& b) {
  Tensor4Sym c;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      double s = 0.0;
      for (int k = 0; k < 6; ++k) s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  return c;
}

// Scalar quadruple contraction A_ijkl B_ijkl.
inline double inner(const Tensor4Sym& a, const Tensor4Sym& b) {
  double s = 0.0;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) s += a(i, j) * b(i, j);
  return s;
}

// Fourth-order derivative of the positive-part projection at t (tests and
// callers that need the full operator; the hot path uses the apply form).
Tensor4Sym positive_part_derivative(const SymTensor2& t);

}  // namespace anidamage
