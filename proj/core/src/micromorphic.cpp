// SPDX-License-Identifier: Apache-2.0

#include "anidamage/micromorphic.hpp"

#include <string>

namespace anidamage {

const char* to_string(MicromorphicModel kind) {
  switch (kind) {
    case MicromorphicModel::A: return "A";
    case MicromorphicModel::B: return "B";
    case MicromorphicModel::C: return "C";
  }
  return "?";
}

MicromorphicModel micromorphic_model_from_string(std::string_view s) {
  if (s == "A" || s == "a") return MicromorphicModel::A;
  if (s == "B" || s == "b") return MicromorphicModel::B;
  if (s == "C" || s == "c") return MicromorphicModel::C;
  throw ConfigError("unknown micromorphic model '" + std::string(s) + "' (expected A, B or C)");
}

const SymTensor2& structural_tensor_sym(int i) {
  // sym(e_a (x) e_b) for (a,b) = (1,1),(2,2),(3,3),(1,2),(1,3),(2,3)
  static const std::array<SymTensor2, 6> m = {
      SymTensor2{1, 0, 0, 0, 0, 0},   SymTensor2{0, 1, 0, 0, 0, 0},
      SymTensor2{0, 0, 1, 0, 0, 0},   SymTensor2{0, 0, 0, 0.5, 0, 0},
      SymTensor2{0, 0, 0, 0, 0.5, 0}, SymTensor2{0, 0, 0, 0, 0, 0.5}};
  return m.at(static_cast<size_t>(i));
}

void tuple_value(const SymTensor2& D, MicromorphicModel kind,
                 std::span<double> out) {
  const int n = tuple_size(kind);
  if (static_cast<int>(out.size()) < n)
    throw DimensionMismatch("tuple_value: output span too small");
  switch (kind) {
    case MicromorphicModel::A:
      // tr(D M_i): the six independent components of D
      out[0] = D.xx();
      out[1] = D.yy();
      out[2] = D.zz();
      out[3] = D.xy();
      out[4] = D.xz();
      out[5] = D.yz();
      break;
    case MicromorphicModel::B: {
      const SymTensor2 D2 = square(D);
      out[0] = trace(D);
      out[1] = trace(D2);
      out[2] = double_contract(D2, D);  // tr(D^3)
      break;
    }
    case MicromorphicModel::C: {
      const SymTensor2 dev = deviator(D);
      out[0] = trace(D) / 3.0;
      out[1] = double_contract(dev, dev);  // tr((dev D)^2)
      break;
    }
  }
}

void tuple_derivative(const SymTensor2& D, MicromorphicModel kind,
                      std::span<SymTensor2> out) {
  const int n = tuple_size(kind);
  if (static_cast<int>(out.size()) < n)
    throw DimensionMismatch("tuple_derivative: output span too small");
  switch (kind) {
    case MicromorphicModel::A:
      for (int i = 0; i < 6; ++i) out[i] = structural_tensor_sym(i);
      break;
    case MicromorphicModel::B:
      out[0] = SymTensor2::identity();
      out[1] = 2.0 * D;
      out[2] = 3.0 * square(D);
      break;
    case MicromorphicModel::C:
      out[0] = SymTensor2::identity() * (1.0 / 3.0);
      out[1] = 2.0 * deviator(D);
      break;
  }
}

SymTensor2 nonlocal_driving_force(const SymTensor2& D,
                                  std::span<const double> dbar,
                                  MicromorphicModel kind,
                                  std::span<const double> H) {
  const int n = tuple_size(kind);
  if (static_cast<int>(dbar.size()) != n || static_cast<int>(H.size()) != n)
    throw DimensionMismatch("nonlocal_driving_force: dbar/H length mismatch");
  std::array<double, kMaxNonlocal> d{};
  std::array<SymTensor2, kMaxNonlocal> dd;
  tuple_value(D, kind, d);
  tuple_derivative(D, kind, dd);
  SymTensor2 y;
  for (int i = 0; i < n; ++i) y += H[i] * (d[i] - dbar[i]) * dd[i];
  return y;
}

void generalized_stresses(std::span<const double> d,
                          std::span<const double> dbar,
                          std::span<const Vec3> grad_dbar,
                          std::span<const double> H, std::span<const double> A,
                          std::span<double> xi0, std::span<Vec3> Xi0) {
  const size_t n = d.size();
  if (dbar.size() != n || grad_dbar.size() != n || H.size() != n ||
      A.size() != n || xi0.size() < n || Xi0.size() < n)
    throw DimensionMismatch("generalized_stresses: span size mismatch");
  for (size_t k = 0; k < n; ++k) {
    xi0[k] = -H[k] * (d[k] - dbar[k]);
    for (int c = 0; c < 3; ++c) Xi0[k][c] = A[k] * grad_dbar[k][c];
  }
}

double micromorphic_energy(std::span<const double> d,
                           std::span<const double> dbar,
                           std::span<const Vec3> grad_dbar,
                           std::span<const double> H,
                           std::span<const double> A) {
  const size_t n = d.size();
  if (dbar.size() != n || grad_dbar.size() != n || H.size() != n || A.size() != n)
    throw DimensionMismatch("micromorphic_energy: span size mismatch");
  double e = 0.0;
  for (size_t k = 0; k < n; ++k) {
    const double g = d[k] - dbar[k];
    e += 0.5 * H[k] * g * g + 0.5 * A[k] * dot(grad_dbar[k], grad_dbar[k]);
  }
  return e;
}

}  // namespace anidamage
