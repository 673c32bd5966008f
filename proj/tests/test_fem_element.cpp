// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>

#include "anidamage/fem/element.hpp"
#include "anidamage/scenario/mesh_gen.hpp"
#include "support/oracles.hpp"

using namespace anidamage;
using namespace anidamage::fem;

namespace {

ElementModel make_model(MaterialParams& p, MicromorphicModel kind) {
  return ElementModel{&p, kind};
}

struct ElementFixture {
  Mesh mesh = scenario::unit_cube_mesh();
  ElementGeometry geom = element_geometry(mesh, 0);
  MaterialParams params = MaterialParams::set1(MicromorphicModel::C);
  ElementModel model = make_model(params, MicromorphicModel::C);
  std::vector<InternalState> states = std::vector<InternalState>(8);
  std::vector<double> ue = std::vector<double>(24, 0.0);
  std::vector<double> de = std::vector<double>(16, 0.0);
  std::vector<double> r_u = std::vector<double>(24, 0.0);
  std::vector<double> r_d = std::vector<double>(16, 0.0);
  std::vector<InternalState> out = std::vector<InternalState>(8);

  void residual() {
    element_residual(geom, model, ue, de, states, 0.01,
                     std::span<double>(r_u.data(), 24),
                     std::span<double>(r_d.data(), 16), out);
  }
};

}  // namespace

TEST_CASE("hex8 shape functions: center, corners, partition of unity") {
  std::array<double, 8> N;
  std::array<Vec3, 8> dN;
  shape_hex8({0, 0, 0}, N, dN);
  for (int a = 0; a < 8; ++a) CHECK(N[a] == doctest::Approx(0.125));

  shape_hex8({1, -1, -1}, N, dN);  // local node 1
  CHECK(N[1] == doctest::Approx(1.0));
  for (int a = 0; a < 8; ++a)
    if (a != 1) CHECK(N[a] == doctest::Approx(0.0));

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int s = 0; s < 50; ++s) {
    const Vec3 xi = {u(rng), u(rng), u(rng)};
    shape_hex8(xi, N, dN);
    double sum = 0.0;
    Vec3 gsum{};
    for (int a = 0; a < 8; ++a) {
      sum += N[a];
      for (int c = 0; c < 3; ++c) gsum[c] += dN[a][c];
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(norm(gsum) < 1e-14);
  }
}

TEST_CASE("trilinear interpolation reproduces linear fields on a distorted hex") {
  Mesh mesh = scenario::unit_cube_mesh();
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-0.08, 0.08);
  for (auto& x : mesh.nodes)
    for (int c = 0; c < 3; ++c) x[c] += u(rng);
  const ElementGeometry geom = element_geometry(mesh, 0);

  // a linear field evaluated at the nodes must have a constant exact gradient
  const Vec3 coef = {0.3, -1.2, 0.7};
  for (const auto& gp : geom.gp) {
    Vec3 grad{};
    for (int a = 0; a < 8; ++a) {
      const Vec3& X = mesh.nodes[static_cast<size_t>(geom.nodes[a])];
      const double f = dot(coef, X) + 2.0;
      for (int c = 0; c < 3; ++c) grad[c] += f * gp.dN[a][c];
    }
    for (int c = 0; c < 3; ++c) CHECK(grad[c] == doctest::Approx(coef[c]).epsilon(1e-12));
  }
}

TEST_CASE("element geometry rejects inverted elements") {
  Mesh mesh = scenario::unit_cube_mesh();
  std::swap(mesh.elements[0][0], mesh.elements[0][1]);  // tangled connectivity
  CHECK_THROWS_AS(element_geometry(mesh, 0), MeshGenerationFailed);
}

TEST_CASE("element residual: rest state and rigid translation give zero forces") {
  ElementFixture f;
  f.residual();
  for (double v : f.r_u) CHECK(v == doctest::Approx(0.0));
  for (double v : f.r_d) CHECK(v == doctest::Approx(0.0));

  // rigid translation leaves E = 0
  for (int a = 0; a < 8; ++a) {
    f.ue[3 * a + 0] = 0.37;
    f.ue[3 * a + 1] = -0.11;
    f.ue[3 * a + 2] = 0.05;
  }
  f.residual();
  for (double v : f.r_u) CHECK(std::abs(v) < 1e-12);
}

TEST_CASE("element residual matches the gradient of the stored element energy") {
  ElementFixture f;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-0.005, 0.005);  // stays elastic
  for (auto& v : f.ue) v = u(rng);
  f.residual();

  auto energy = [&](const std::vector<double>& ue) {
    double e = 0.0;
    for (const auto& gp : f.geom.gp) {
      FullTensor2 F = FullTensor2::identity();
      for (int a = 0; a < 8; ++a)
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) F(i, j) += ue[3 * a + i] * gp.dN[a][j];
      e += gp.weight * psi_e(right_cauchy_green(F), SymTensor2::zero(), f.params);
    }
    return e;
  };

  const double h = 1e-7;
  for (int j = 0; j < 24; ++j) {
    auto up = f.ue, um = f.ue;
    up[j] += h;
    um[j] -= h;
    const double fd = (energy(up) - energy(um)) / (2 * h);
    CHECK(f.r_u[j] == doctest::Approx(fd).epsilon(1e-6));
  }
}

TEST_CASE("element tangent: elastic u-u block matches the analytic assembly") {
  ElementFixture f;
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-0.004, 0.004);
  for (auto& v : f.ue) v = u(rng);

  Eigen::MatrixXd K;
  element_tangent(f.geom, f.model, f.ue, f.de, f.states, 0.01, K,
                  TangentMode::ResidualFd);

  // analytic geometric + material tangent with the hyperelastic moduli
  Eigen::MatrixXd Ka = Eigen::MatrixXd::Zero(24, 24);
  for (const auto& gp : f.geom.gp) {
    FullTensor2 F = FullTensor2::identity();
    for (int a = 0; a < 8; ++a)
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) F(i, j) += f.ue[3 * a + i] * gp.dN[a][j];
    const SymTensor2 C = right_cauchy_green(F);
    const SymTensor2 S = f.params.hyperelastic().stress2pk(C);
    const Tensor4Sym CC = f.params.hyperelastic().tangent(C);
    for (int a = 0; a < 8; ++a)
      for (int i = 0; i < 3; ++i)
        for (int b = 0; b < 8; ++b)
          for (int j = 0; j < 3; ++j) {
            double geo = 0.0, mat = 0.0;
            for (int J = 0; J < 3; ++J)
              for (int L = 0; L < 3; ++L) {
                if (i == j) geo += gp.dN[a][J] * S(J, L) * gp.dN[b][L];
                for (int K2 = 0; K2 < 3; ++K2)
                  for (int Q = 0; Q < 3; ++Q)
                    mat += gp.dN[a][J] * F(i, K2) * CC.component(K2, J, Q, L) *
                           F(j, Q) * gp.dN[b][L];
              }
            Ka(3 * a + i, 3 * b + j) += gp.weight * (geo + mat);
          }
  }
  const double scale = Ka.cwiseAbs().maxCoeff();
  CHECK((K.topLeftCorner(24, 24) - Ka).cwiseAbs().maxCoeff() < 1e-4 * scale);
}

TEST_CASE("element tangent: nonlocal block vanishes in local mode") {
  ElementFixture f;  // set1 has H = A = 0
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-0.01, 0.01);
  for (auto& v : f.ue) v = u(rng);
  Eigen::MatrixXd K;
  element_tangent(f.geom, f.model, f.ue, f.de, f.states, 0.01, K,
                  TangentMode::ResidualFd);
  CHECK(K.block(24, 24, 16, 16).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
  CHECK(K.block(24, 0, 16, 24).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
}

TEST_CASE("the residual-FD and point-FD tangents agree") {
  ElementFixture f;
  f.params = MaterialParams::set2(MicromorphicModel::C);
  f.params.Y0 = 5.0;  // reachable onset for the probe strain below
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-0.01, 0.01);
  for (auto& v : f.ue) v = u(rng);
  f.ue[3 * 4 + 2] += 0.02;  // stretch the top to trigger some damage
  f.ue[3 * 5 + 2] += 0.02;
  f.ue[3 * 6 + 2] += 0.02;
  f.ue[3 * 7 + 2] += 0.02;
  std::uniform_real_distribution<double> ud(-0.005, 0.005);
  for (auto& v : f.de) v = ud(rng);

  f.residual();
  bool damaging = false;
  for (const auto& s : f.out) damaging |= trace(s.D) > 0.0;
  CHECK(damaging);

  Eigen::MatrixXd K_res, K_pt;
  element_tangent(f.geom, f.model, f.ue, f.de, f.states, 0.01, K_res,
                  TangentMode::ResidualFd);
  element_tangent(f.geom, f.model, f.ue, f.de, f.states, 0.01, K_pt,
                  TangentMode::PointFd);
  const double scale = K_res.cwiseAbs().maxCoeff();
  CHECK((K_res - K_pt).cwiseAbs().maxCoeff() < 2e-4 * scale);
}

TEST_CASE("follower pressure: resultant and follower behavior") {
  const std::array<Vec3, 4> X = {Vec3{0, 0, 1}, Vec3{1, 0, 1}, Vec3{1, 1, 1}, Vec3{0, 1, 1}};
  std::array<Vec3, 4> u{};
  std::array<double, 12> fo;
  face_pressure_force(X, u, 2.5, fo);
  Vec3 total{};
  for (int a = 0; a < 4; ++a)
    for (int c = 0; c < 3; ++c) total[c] += fo[3 * a + c];
  // outward normal of this quad is +z; pressure pushes along -z
  CHECK(total[0] == doctest::Approx(0.0));
  CHECK(total[1] == doctest::Approx(0.0));
  CHECK(total[2] == doctest::Approx(-2.5));

  // rotate the face 90 degrees about x: the resultant follows the geometry
  for (int a = 0; a < 4; ++a) {
    const Vec3 p = X[a];
    const Vec3 rotated = {p[0], p[2], -p[1]};
    u[a] = {rotated[0] - p[0], rotated[1] - p[1], rotated[2] - p[2]};
  }
  face_pressure_force(X, u, 2.5, fo);
  total = {};
  for (int a = 0; a < 4; ++a)
    for (int c = 0; c < 3; ++c) total[c] += fo[3 * a + c];
  CHECK(total[1] == doctest::Approx(-2.5));  // normal now points along +y
  CHECK(std::abs(total[0]) < 1e-12);
  CHECK(std::abs(total[2]) < 1e-12);

  // tangent is the FD derivative of the force
  Eigen::MatrixXd Kp;
  face_pressure_tangent(X, u, 2.5, Kp);
  CHECK(Kp.rows() == 12);
  CHECK(std::isfinite(Kp.norm()));
}

TEST_CASE("constitutive failures carry gauss point context") {
  ElementFixture f;
  // crush the element so det(C) <= 0 at the gauss points
  for (int a = 0; a < 8; ++a) f.ue[3 * a + 2] = -1.2 * f.mesh.nodes[a][2];
  CHECK_THROWS_WITH_AS(f.residual(), doctest::Contains("gauss point"),
                       NonPositiveJacobian);
}
