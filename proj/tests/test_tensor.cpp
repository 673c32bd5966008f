// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>

#include "anidamage/tensor.hpp"
#include "support/oracles.hpp"

using namespace anidamage;

TEST_CASE("spectral decomposition: identity and diagonal") {
  const Spectral si = spectral_decompose(SymTensor2::identity());
  for (int i = 0; i < 3; ++i) CHECK(si.values[i] == doctest::Approx(1.0));

  const Spectral sd = spectral_decompose(SymTensor2::diag(3, 2, 1));
  CHECK(sd.values[0] == doctest::Approx(3.0));
  CHECK(sd.values[1] == doctest::Approx(2.0));
  CHECK(sd.values[2] == doctest::Approx(1.0));
  // axis-aligned, sign convention: first nonzero component positive
  CHECK(sd.vectors[0][0] == doctest::Approx(1.0));
  CHECK(sd.vectors[1][1] == doctest::Approx(1.0));
  CHECK(sd.vectors[2][2] == doctest::Approx(1.0));
}

TEST_CASE("spectral decomposition matches characteristic polynomial on 1000 samples") {
  std::mt19937_64 rng(7);
  for (int s = 0; s < 1000; ++s) {
    const SymTensor2 t = oracle::random_sym(rng, 2.0);
    const Spectral sp = spectral_decompose(t);
    const auto lam = oracle::charpoly_eigenvalues(t);
    const double scale = std::max(1.0, frobenius_norm(t));
    for (int i = 0; i < 3; ++i)
      CHECK(std::abs(sp.values[i] - lam[i]) < 1e-9 * scale);
    CHECK(frobenius_norm(sp.reconstruct() - t) < 1e-12 * scale);
  }
}

TEST_CASE("spectral reconstruction holds over large condition spread") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ue(0.0, 6.0);  // eigenvalue decades
  for (int s = 0; s < 10000; ++s) {
    const SymTensor2 frame = oracle::random_sym(rng);
    const Spectral fr = spectral_decompose(frame);
    SymTensor2 t;
    for (int i = 0; i < 3; ++i)
      t += std::pow(10.0, ue(rng) - 3.0) * SymTensor2::dyad(fr.vectors[i]);
    const Spectral sp = spectral_decompose(t);
    CHECK(frobenius_norm(sp.reconstruct() - t) < 1e-12 * frobenius_norm(t));
    // orthonormality
    for (int i = 0; i < 3; ++i) {
      CHECK(std::abs(norm(sp.vectors[i]) - 1.0) < 1e-12);
      for (int j = i + 1; j < 3; ++j)
        CHECK(std::abs(dot(sp.vectors[i], sp.vectors[j])) < 1e-12);
    }
    CHECK(sp.values[0] >= sp.values[1]);
    CHECK(sp.values[1] >= sp.values[2]);
  }
}

TEST_CASE("eigenvalue-only solver agrees with the full decomposition") {
  std::mt19937_64 rng(23);
  for (int s = 0; s < 2000; ++s) {
    const SymTensor2 t = oracle::random_sym(rng, 3.0);
    const auto fast = sym_eigenvalues(t);
    const auto full = spectral_decompose(t);
    const double scale = std::max(1.0, frobenius_norm(t));
    for (int i = 0; i < 3; ++i)
      CHECK(std::abs(fast[i] - full.values[i]) < 1e-10 * scale);
  }
}

TEST_CASE("positive part: diagonal clamps and negative-definite input") {
  const SymTensor2 a = positive_part(SymTensor2::diag(2, -1, 0));
  CHECK(frobenius_norm(a - SymTensor2::diag(2, 0, 0)) < 1e-14);

  const SymTensor2 b = positive_part(SymTensor2::diag(-3, -2, -1));
  CHECK(frobenius_norm(b) == 0.0);
}

TEST_CASE("positive part: spectral properties on random input") {
  std::mt19937_64 rng(3);
  for (int s = 0; s < 500; ++s) {
    const SymTensor2 t = oracle::random_sym(rng, 2.0);
    const SymTensor2 tp = positive_part(t);
    const auto lam_in = oracle::charpoly_eigenvalues(t);
    const auto lam_out = oracle::charpoly_eigenvalues(tp);
    const double otol = 1e-8 * std::max(1.0, frobenius_norm(t));  // oracle accuracy
    for (int i = 0; i < 3; ++i) {
      CHECK(lam_out[i] > -otol);
      CHECK(std::abs(lam_out[i] - std::max(lam_in[i], 0.0)) < otol);
    }
    // idempotent
    CHECK(frobenius_norm(positive_part(tp) - tp) < 1e-12 * std::max(1.0, frobenius_norm(tp)));

    // positive_part(t) + positive_part(-t) has the eigenvalues of |t|
    const SymTensor2 abs_t = positive_part(t) + positive_part(-t);
    const auto lam_abs = oracle::charpoly_eigenvalues(abs_t);
    std::array<double, 3> expect = {std::abs(lam_in[0]), std::abs(lam_in[1]),
                                    std::abs(lam_in[2])};
    std::sort(expect.begin(), expect.end(), std::greater<double>());
    for (int i = 0; i < 3; ++i) CHECK(std::abs(lam_abs[i] - expect[i]) < otol);
  }
}

TEST_CASE("deviator") {
  CHECK(frobenius_norm(deviator(SymTensor2::identity())) == 0.0);
  const SymTensor2 d = deviator(SymTensor2::diag(1, 0, 0));
  CHECK(d(0, 0) == doctest::Approx(2.0 / 3.0));
  CHECK(d(1, 1) == doctest::Approx(-1.0 / 3.0));
  CHECK(d(2, 2) == doctest::Approx(-1.0 / 3.0));

  std::mt19937_64 rng(5);
  for (int s = 0; s < 200; ++s) {
    const SymTensor2 t = oracle::random_sym(rng, 4.0);
    const double tr = t(0, 0) + t(1, 1) + t(2, 2);
    SymTensor2 expect = t;
    for (int k = 0; k < 3; ++k) expect[k] -= tr / 3.0;
    CHECK(frobenius_norm(deviator(t) - expect) < 1e-14 * std::max(1.0, frobenius_norm(t)));
    CHECK(std::abs(trace(deviator(t))) < 1e-13 * std::max(1.0, frobenius_norm(t)));
  }
}

TEST_CASE("det, inverse, trace, double contraction") {
  CHECK(det(SymTensor2::diag(2, 3, 4)) == doctest::Approx(24.0));
  CHECK(frobenius_norm(inverse(SymTensor2::identity()) - SymTensor2::identity()) < 1e-15);
  CHECK_THROWS_AS((void)inverse(SymTensor2::diag(1, 1, 0)), SingularTensor);

  std::mt19937_64 rng(9);
  for (int s = 0; s < 200; ++s) {
    const SymTensor2 a = oracle::random_sym(rng);
    const SymTensor2 b = oracle::random_sym(rng);
    CHECK(double_contract(a, b) == doctest::Approx(oracle::loop_double_contract(a, b)));

    const SymTensor2 c = oracle::random_cauchy_green(rng);
    const SymTensor2 ci = inverse(c);
    const FullTensor2 prod = matrix_product(c, ci);
    CHECK(frobenius_norm(symmetrize(prod) - SymTensor2::identity()) < 1e-10);
  }
}

TEST_CASE("matrix product of two symmetric tensors is a full tensor") {
  const SymTensor2 a(1, 2, 3, 0.5, 0, 0);
  const SymTensor2 b(2, 1, 1, 0, 0.25, 0);
  const FullTensor2 ab = matrix_product(a, b);
  // spot-check one asymmetric pair against hand expansion
  double ab01 = 0, ab10 = 0;
  for (int k = 0; k < 3; ++k) {
    ab01 += a(0, k) * b(k, 1);
    ab10 += a(1, k) * b(k, 0);
  }
  CHECK(ab(0, 1) == doctest::Approx(ab01));
  CHECK(ab(1, 0) == doctest::Approx(ab10));
  CHECK(ab01 != doctest::Approx(ab10));
}

TEST_CASE("mandel double contraction equals index-wise contraction") {
  std::mt19937_64 rng(13);
  for (int s = 0; s < 200; ++s) {
    const SymTensor2 a = oracle::random_sym(rng);
    const SymTensor2 b = oracle::random_sym(rng);
    const auto ma = to_mandel(a);
    const auto mb = to_mandel(b);
    double dot_m = 0.0;
    for (int k = 0; k < 6; ++k) dot_m += ma[k] * mb[k];
    CHECK(std::abs(dot_m - oracle::loop_double_contract(a, b)) <=
          1e-12 * std::max(1.0, std::abs(dot_m)));
  }
}

TEST_CASE("tensor4 apply matches full index loops") {
  std::mt19937_64 rng(17);
  for (int s = 0; s < 100; ++s) {
    const SymTensor2 g = oracle::random_sym(rng);
    const SymTensor2 x = oracle::random_sym(rng);
    const Tensor4Sym t = Tensor4Sym::congruence(g);
    // congruence: t : x = g x g
    const SymTensor2 ref = sandwich(g, x);
    CHECK(frobenius_norm(t.apply(x) - ref) < 1e-12 * std::max(1.0, frobenius_norm(ref)));

    // component extraction round trip: T_ijkl contracted with x by loops
    SymTensor2 loop;
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) {
        double ssum = 0.0;
        for (int k = 0; k < 3; ++k)
          for (int l = 0; l < 3; ++l) ssum += t.component(i, j, k, l) * x(k, l);
        loop.at(i, j) = ssum;
      }
    CHECK(frobenius_norm(loop - ref) < 1e-12 * std::max(1.0, frobenius_norm(ref)));
  }
}

TEST_CASE("positive part derivative matches finite differences away from kinks") {
  std::mt19937_64 rng(29);
  int tested = 0;
  while (tested < 100) {
    const SymTensor2 t = oracle::random_sym(rng, 2.0);
    const auto lam = oracle::charpoly_eigenvalues(t);
    // keep eigenvalues clear of 0 and of each other so the map is smooth
    if (std::abs(lam[0] - lam[1]) < 1e-2 || std::abs(lam[1] - lam[2]) < 1e-2 ||
        std::abs(lam[0]) < 1e-2 || std::abs(lam[1]) < 1e-2 || std::abs(lam[2]) < 1e-2)
      continue;
    ++tested;
    const Tensor4Sym d = positive_part_derivative(t);
    const Tensor4Sym fd = oracle::fd_sym_jacobian(
        [](const SymTensor2& x) { return positive_part(x); }, t, 1e-6);
    double err = 0.0;
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) err = std::max(err, std::abs(d(i, j) - fd(i, j)));
    CHECK(err < 1e-6);
  }
}

TEST_CASE("degenerate eigenvalues: derivative application stays finite and symmetric") {
  const SymTensor2 t = SymTensor2::diag(1.0, 1.0, -0.5);  // double eigenvalue
  const Spectral sp = spectral_decompose(t);
  std::mt19937_64 rng(31);
  const SymTensor2 m = oracle::random_sym(rng);
  const SymTensor2 r = apply_positive_part_derivative(sp, frobenius_norm(t), m);
  for (int k = 0; k < 6; ++k) CHECK(std::isfinite(r[k]));
}
