// SPDX-License-Identifier: Apache-2.0

#include "anidamage/fem/element.hpp"

#include <cmath>
#include <string>

namespace anidamage {
namespace fem {

namespace {

constexpr std::array<std::array<double, 3>, 8> kLocalNodes = {{
    {-1, -1, -1}, {1, -1, -1}, {1, 1, -1}, {-1, 1, -1},
    {-1, -1, 1},  {1, -1, 1},  {1, 1, 1},  {-1, 1, 1},
}};

constexpr double kGauss = 0.5773502691896258;  // 1/sqrt(3)

}  // namespace

void shape_hex8(const Vec3& xi, std::array<double, 8>& N,
                std::array<Vec3, 8>& dN_local) {
  for (int a = 0; a < 8; ++a) {
    const double sx = kLocalNodes[static_cast<size_t>(a)][0];
    const double sy = kLocalNodes[static_cast<size_t>(a)][1];
    const double sz = kLocalNodes[static_cast<size_t>(a)][2];
    const double fx = 1.0 + sx * xi[0];
    const double fy = 1.0 + sy * xi[1];
    const double fz = 1.0 + sz * xi[2];
    N[static_cast<size_t>(a)] = 0.125 * fx * fy * fz;
    dN_local[static_cast<size_t>(a)] = {0.125 * sx * fy * fz,
                                        0.125 * fx * sy * fz,
                                        0.125 * fx * fy * sz};
  }
}

ElementGeometry element_geometry(const Mesh& mesh, int elem) {
  ElementGeometry geom;
  geom.nodes = mesh.elements[static_cast<size_t>(elem)];
  int q = 0;
  for (int kz = 0; kz < 2; ++kz)
    for (int ky = 0; ky < 2; ++ky)
      for (int kx = 0; kx < 2; ++kx, ++q) {
        const Vec3 xi = {kx == 0 ? -kGauss : kGauss,
                         ky == 0 ? -kGauss : kGauss,
                         kz == 0 ? -kGauss : kGauss};
        std::array<double, 8> N;
        std::array<Vec3, 8> dNl;
        shape_hex8(xi, N, dNl);

        FullTensor2 J;  // J_ij = dx_i/dxi_j
        for (int a = 0; a < 8; ++a) {
          const Vec3& X = mesh.nodes[static_cast<size_t>(geom.nodes[static_cast<size_t>(a)])];
          for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
              J(i, j) += X[i] * dNl[static_cast<size_t>(a)][j];
        }
        const double detJ = det(J);
        if (!(detJ > 0.0))
          throw MeshGenerationFailed("element " + std::to_string(elem) +
                                     ": nonpositive Jacobian " +
                                     std::to_string(detJ) + " at Gauss point " +
                                     std::to_string(q));
        const FullTensor2 Jinv = inverse(J);
        GaussPoint& gp = geom.gp[static_cast<size_t>(q)];
        gp.N = N;
        for (int a = 0; a < 8; ++a) {
          // dN/dX = J^{-T} dN/dxi
          const Vec3& g = dNl[static_cast<size_t>(a)];
          gp.dN[static_cast<size_t>(a)] = {
              Jinv(0, 0) * g[0] + Jinv(1, 0) * g[1] + Jinv(2, 0) * g[2],
              Jinv(0, 1) * g[0] + Jinv(1, 1) * g[1] + Jinv(2, 1) * g[2],
              Jinv(0, 2) * g[0] + Jinv(1, 2) * g[1] + Jinv(2, 2) * g[2]};
        }
        gp.weight = detJ;  // unit Gauss weights for 2x2x2
      }
  return geom;
}

namespace {

FullTensor2 deformation_gradient(const GaussPoint& gp, std::span<const double> ue) {
  FullTensor2 f = FullTensor2::identity();
  for (int a = 0; a < 8; ++a)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        f(i, j) += ue[static_cast<size_t>(3 * a + i)] * gp.dN[static_cast<size_t>(a)][j];
  return f;
}

}  // namespace

void element_residual(const ElementGeometry& geom, const ElementModel& model,
                      std::span<const double> ue, std::span<const double> de,
                      std::span<const InternalState> states_n, double dt,
                      std::span<double> r_u, std::span<double> r_d,
                      std::span<InternalState> states_out,
                      ElementScratch* scratch) {
  const MaterialParams& p = *model.params;
  const int n = model.n_dbar();

  std::fill(r_u.begin(), r_u.end(), 0.0);
  std::fill(r_d.begin(), r_d.end(), 0.0);
  if (scratch) scratch->stored_energy = 0.0;

  for (int q = 0; q < 8; ++q) {
    const GaussPoint& gp = geom.gp[static_cast<size_t>(q)];
    const FullTensor2 F = deformation_gradient(gp, ue);
    const SymTensor2 C = right_cauchy_green(F);

    std::array<double, kMaxNonlocal> dbar{};
    std::array<Vec3, kMaxNonlocal> grad{};
    for (int a = 0; a < 8; ++a)
      for (int k = 0; k < n; ++k) {
        const double v = de[static_cast<size_t>(a * n + k)];
        dbar[static_cast<size_t>(k)] += gp.N[static_cast<size_t>(a)] * v;
        for (int c = 0; c < 3; ++c)
          grad[static_cast<size_t>(k)][static_cast<size_t>(c)] +=
              v * gp.dN[static_cast<size_t>(a)][static_cast<size_t>(c)];
      }

    std::pair<InternalState, PointResponse> up;
    try {
      up = point_update(C, std::span<const double>(dbar.data(), static_cast<size_t>(n)),
                        states_n[static_cast<size_t>(q)], dt, p, model.kind);
    } catch (const NonPositiveJacobian& e) {
      throw NonPositiveJacobian("gauss point " + std::to_string(q) + ": " + e.what());
    } catch (const LocalNewtonDiverged& e) {
      throw LocalNewtonDiverged("gauss point " + std::to_string(q) + ": " + e.what());
    }
    const PointResponse& resp = up.second;
    states_out[static_cast<size_t>(q)] = up.first;

    const double w = gp.weight;

    // internal force: r_u(a,i) = w (F S)_iJ dN_a[J]
    const FullTensor2 P = matmul(F, FullTensor2::from_sym(resp.S));
    for (int a = 0; a < 8; ++a) {
      const Vec3& g = gp.dN[static_cast<size_t>(a)];
      for (int i = 0; i < 3; ++i)
        r_u[static_cast<size_t>(3 * a + i)] +=
            w * (P(i, 0) * g[0] + P(i, 1) * g[1] + P(i, 2) * g[2]);
    }

    // micromorphic residual: r_d(a,k) = w (xi0_k N_a + A_k grad_k . dN_a)
    for (int a = 0; a < 8; ++a)
      for (int k = 0; k < n; ++k) {
        const double Ak = p.A_micro[static_cast<size_t>(k)];
        r_d[static_cast<size_t>(a * n + k)] +=
            w * (resp.xi0[static_cast<size_t>(k)] * gp.N[static_cast<size_t>(a)] +
                 Ak * dot(grad[static_cast<size_t>(k)], gp.dN[static_cast<size_t>(a)]));
      }

    if (scratch) {
      scratch->responses[static_cast<size_t>(q)] = resp;
      const double psi_nl = micromorphic_energy(
          std::span<const double>(resp.d.data(), static_cast<size_t>(n)),
          std::span<const double>(dbar.data(), static_cast<size_t>(n)),
          std::span<const Vec3>(grad.data(), static_cast<size_t>(n)),
          p.H_micro, p.A_micro);
      scratch->stored_energy += w * (resp.psi_e + resp.psi_d + resp.psi_h + psi_nl);
    }
  }
}

namespace {

void tangent_residual_fd(const ElementGeometry& geom, const ElementModel& model,
                         std::span<const double> ue, std::span<const double> de,
                         std::span<const InternalState> states_n, double dt,
                         Eigen::MatrixXd& K, double rel_step) {
  const int n = model.n_dbar();
  const int ndof = model.n_elem_dofs();
  K.setZero(ndof, ndof);

  std::vector<double> x(static_cast<size_t>(ndof));
  std::copy(ue.begin(), ue.end(), x.begin());
  std::copy(de.begin(), de.end(), x.begin() + 24);

  std::vector<double> rp(static_cast<size_t>(ndof)), rm(static_cast<size_t>(ndof));
  std::vector<InternalState> tmp_states(8);

  auto eval = [&](const std::vector<double>& xv, std::vector<double>& r) {
    element_residual(geom, model,
                     std::span<const double>(xv.data(), 24),
                     std::span<const double>(xv.data() + 24, static_cast<size_t>(8 * n)),
                     states_n, dt,
                     std::span<double>(r.data(), 24),
                     std::span<double>(r.data() + 24, static_cast<size_t>(8 * n)),
                     tmp_states);
  };

  std::vector<double> xp = x;
  for (int j = 0; j < ndof; ++j) {
    const double h = rel_step * std::max(1.0, std::abs(x[static_cast<size_t>(j)]));
    xp[static_cast<size_t>(j)] = x[static_cast<size_t>(j)] + h;
    eval(xp, rp);
    xp[static_cast<size_t>(j)] = x[static_cast<size_t>(j)] - h;
    eval(xp, rm);
    xp[static_cast<size_t>(j)] = x[static_cast<size_t>(j)];
    for (int i = 0; i < ndof; ++i)
      K(i, j) = (rp[static_cast<size_t>(i)] - rm[static_cast<size_t>(i)]) / (2.0 * h);
  }
}

void tangent_point_fd(const ElementGeometry& geom, const ElementModel& model,
                      std::span<const double> ue, std::span<const double> de,
                      std::span<const InternalState> states_n, double dt,
                      Eigen::MatrixXd& K, double rel_step) {
  const MaterialParams& p = *model.params;
  const int n = model.n_dbar();
  const int ndof = model.n_elem_dofs();
  K.setZero(ndof, ndof);

  Eigen::Matrix<double, 24, 6> B;          // Mandel strain-displacement rows
  Eigen::Matrix<double, 6, 6> M;           // dS/dC in Mandel form
  Eigen::Matrix<double, 24, 24> Kuu;

  for (int q = 0; q < 8; ++q) {
    const GaussPoint& gp = geom.gp[static_cast<size_t>(q)];
    const FullTensor2 F = deformation_gradient(gp, ue);
    const SymTensor2 C = right_cauchy_green(F);

    std::array<double, kMaxNonlocal> dbar{};
    for (int a = 0; a < 8; ++a)
      for (int k = 0; k < n; ++k)
        dbar[static_cast<size_t>(k)] +=
            gp.N[static_cast<size_t>(a)] * de[static_cast<size_t>(a * n + k)];
    const std::span<const double> dspan(dbar.data(), static_cast<size_t>(n));

    const TangentBlocks tb = consistent_tangent(
        C, dspan, states_n[static_cast<size_t>(q)], dt, p, model.kind, rel_step);
    const PointResponse resp =
        point_update(C, dspan, states_n[static_cast<size_t>(q)], dt, p, model.kind).second;

    const double w = gp.weight;

    // B rows: mandel(dE/du_(a,i))
    for (int a = 0; a < 8; ++a) {
      const Vec3& g = gp.dN[static_cast<size_t>(a)];
      for (int i = 0; i < 3; ++i) {
        SymTensor2 b;
        for (int J = 0; J < 3; ++J)
          for (int Kc = J; Kc < 3; ++Kc)
            b.at(J, Kc) = 0.5 * (g[static_cast<size_t>(J)] * F(i, Kc) +
                                 F(i, J) * g[static_cast<size_t>(Kc)]);
        const auto bm = to_mandel(b);
        for (int c = 0; c < 6; ++c) B(3 * a + i, c) = bm[static_cast<size_t>(c)];
      }
    }
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) M(i, j) = tb.dS_dC(i, j);

    // material part (dC = 2 dE) plus geometric part
    Kuu.noalias() = (2.0 * w) * (B * M * B.transpose());
    for (int a = 0; a < 8; ++a)
      for (int b = 0; b < 8; ++b) {
        const Vec3 Sg = resp.S.apply(gp.dN[static_cast<size_t>(b)]);
        const double geo = w * dot(gp.dN[static_cast<size_t>(a)], Sg);
        for (int i = 0; i < 3; ++i) Kuu(3 * a + i, 3 * b + i) += geo;
      }
    K.block<24, 24>(0, 0) += Kuu;

    // coupling and nonlocal blocks
    for (int k = 0; k < n; ++k) {
      const auto dSdd = to_mandel(tb.dS_ddbar[static_cast<size_t>(k)]);
      const auto dxidC = to_mandel(tb.dxi0_dC[static_cast<size_t>(k)]);
      for (int b = 0; b < 8; ++b) {
        const double Nb = gp.N[static_cast<size_t>(b)];
        for (int ai = 0; ai < 24; ++ai) {
          double budSdd = 0.0;
          for (int c = 0; c < 6; ++c) budSdd += B(ai, c) * dSdd[static_cast<size_t>(c)];
          K(ai, 24 + b * n + k) += w * budSdd * Nb;
        }
      }
      for (int a = 0; a < 8; ++a) {
        const double Na = gp.N[static_cast<size_t>(a)];
        for (int bj = 0; bj < 24; ++bj) {
          double bdxi = 0.0;
          for (int c = 0; c < 6; ++c) bdxi += B(bj, c) * dxidC[static_cast<size_t>(c)];
          K(24 + a * n + k, bj) += w * 2.0 * Na * bdxi;
        }
      }
    }
    for (int a = 0; a < 8; ++a)
      for (int b = 0; b < 8; ++b) {
        const double Na = gp.N[static_cast<size_t>(a)];
        const double Nb = gp.N[static_cast<size_t>(b)];
        const double gg = dot(gp.dN[static_cast<size_t>(a)], gp.dN[static_cast<size_t>(b)]);
        for (int k = 0; k < n; ++k) {
          for (int l = 0; l < n; ++l)
            K(24 + a * n + k, 24 + b * n + l) +=
                w * Na * tb.dxi0_ddbar[static_cast<size_t>(k)][static_cast<size_t>(l)] * Nb;
          K(24 + a * n + k, 24 + b * n + k) +=
              w * p.A_micro[static_cast<size_t>(k)] * gg;
        }
      }
  }
}

}  // namespace

void element_tangent(const ElementGeometry& geom, const ElementModel& model,
                     std::span<const double> ue, std::span<const double> de,
                     std::span<const InternalState> states_n, double dt,
                     Eigen::MatrixXd& K, TangentMode mode, double rel_step) {
  if (mode == TangentMode::ResidualFd)
    tangent_residual_fd(geom, model, ue, de, states_n, dt, K, rel_step);
  else
    tangent_point_fd(geom, model, ue, de, states_n, dt, K, rel_step);
}

void face_pressure_force(const std::array<Vec3, 4>& X,
                         const std::array<Vec3, 4>& u, double p,
                         std::array<double, 12>& f) {
  f.fill(0.0);
  std::array<Vec3, 4> x;
  for (int a = 0; a < 4; ++a)
    for (int c = 0; c < 3; ++c) x[static_cast<size_t>(a)][static_cast<size_t>(c)] =
        X[static_cast<size_t>(a)][static_cast<size_t>(c)] + u[static_cast<size_t>(a)][static_cast<size_t>(c)];

  static constexpr std::array<std::array<double, 2>, 4> corner = {{{-1, -1}, {1, -1}, {1, 1}, {-1, 1}}};
  for (int qx = 0; qx < 2; ++qx)
    for (int qy = 0; qy < 2; ++qy) {
      const double xi = qx == 0 ? -kGauss : kGauss;
      const double eta = qy == 0 ? -kGauss : kGauss;
      std::array<double, 4> N;
      std::array<std::array<double, 2>, 4> dN;
      for (int a = 0; a < 4; ++a) {
        const double sx = corner[static_cast<size_t>(a)][0];
        const double sy = corner[static_cast<size_t>(a)][1];
        N[static_cast<size_t>(a)] = 0.25 * (1 + sx * xi) * (1 + sy * eta);
        dN[static_cast<size_t>(a)] = {0.25 * sx * (1 + sy * eta), 0.25 * (1 + sx * xi) * sy};
      }
      Vec3 t1{}, t2{};
      for (int a = 0; a < 4; ++a)
        for (int c = 0; c < 3; ++c) {
          t1[static_cast<size_t>(c)] += dN[static_cast<size_t>(a)][0] * x[static_cast<size_t>(a)][static_cast<size_t>(c)];
          t2[static_cast<size_t>(c)] += dN[static_cast<size_t>(a)][1] * x[static_cast<size_t>(a)][static_cast<size_t>(c)];
        }
      const Vec3 nda = cross(t1, t2);  // outward normal times area measure
      for (int a = 0; a < 4; ++a)
        for (int c = 0; c < 3; ++c)
          f[static_cast<size_t>(3 * a + c)] += -p * N[static_cast<size_t>(a)] * nda[static_cast<size_t>(c)];
    }
}

void face_pressure_tangent(const std::array<Vec3, 4>& X,
                           const std::array<Vec3, 4>& u, double p,
                           Eigen::MatrixXd& K, double rel_step) {
  K.setZero(12, 12);
  std::array<double, 12> fp, fm;
  std::array<Vec3, 4> up = u;
  for (int j = 0; j < 12; ++j) {
    const int a = j / 3, c = j % 3;
    const double base = u[static_cast<size_t>(a)][static_cast<size_t>(c)];
    const double h = rel_step * std::max(1.0, std::abs(base));
    up[static_cast<size_t>(a)][static_cast<size_t>(c)] = base + h;
    face_pressure_force(X, up, p, fp);
    up[static_cast<size_t>(a)][static_cast<size_t>(c)] = base - h;
    face_pressure_force(X, up, p, fm);
    up[static_cast<size_t>(a)][static_cast<size_t>(c)] = base;
    for (int i = 0; i < 12; ++i)
      K(i, j) = (fp[static_cast<size_t>(i)] - fm[static_cast<size_t>(i)]) / (2.0 * h);
  }
}

}  // namespace fem
}  // namespace anidamage
