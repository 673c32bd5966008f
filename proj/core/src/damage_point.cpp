// SPDX-License-Identifier: Apache-2.0

#include "anidamage/damage_point.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace anidamage {

namespace {

bool is_zero(const SymTensor2& t) {
  for (int k = 0; k < 6; ++k)
    if (t[k] != 0.0) return false;
  return true;
}

// (I - D)^(c_d); eigenvalues of (I - D) are clamped at zero so transient
// solver iterates with over-unity damage eigenvalues stay evaluable.
SymTensor2 interaction_root(const SymTensor2& D, const MaterialParams& p) {
  const SymTensor2 one_minus = SymTensor2::identity() - D;
  if (p.c_d == 1.0) return one_minus;
  const Spectral s = spectral_decompose(one_minus);
  SymTensor2 g;
  for (int i = 0; i < 3; ++i)
    g += std::pow(std::max(s.values[i], 0.0), p.c_d) *
         SymTensor2::dyad(s.vectors[i]);
  return g;
}

}  // namespace

double f_iso(const SymTensor2& D, const MaterialParams& p) {
  const double base = std::max(0.0, 1.0 - trace(D) / 3.0);
  return std::pow(base, p.e_d);
}

double f_ani(const SymTensor2& C, const SymTensor2& D, const MaterialParams& p) {
  const SymTensor2 C2 = square(C);
  const double t2 = trace(C2);
  const double base = std::max(0.0, 1.0 - double_contract(C2, D) / t2);
  return std::pow(base, p.f_d);
}

SymTensor2 dfiso_dD(const SymTensor2& D, const MaterialParams& p) {
  const double base = 1.0 - trace(D) / 3.0;
  if (base <= 0.0) return {};
  const double pref = p.e_d * std::pow(base, p.e_d - 1.0);
  return SymTensor2::identity() * (-pref / 3.0);
}

SymTensor2 dfani_dD(const SymTensor2& C, const SymTensor2& D, const MaterialParams& p) {
  const SymTensor2 C2 = square(C);
  const double t2 = trace(C2);
  const double base = 1.0 - double_contract(C2, D) / t2;
  if (base <= 0.0) return {};
  const double pref = p.f_d * std::pow(base, p.f_d - 1.0);
  return C2 * (-pref / t2);
}

SymTensor2 dfani_dC(const SymTensor2& C, const SymTensor2& D, const MaterialParams& p) {
  const SymTensor2 C2 = square(C);
  const double t2 = trace(C2);
  const double m = double_contract(C2, D);
  const double base = 1.0 - m / t2;
  if (base <= 0.0) return {};  // f_ani is clamped at zero beyond this point
  const double pref = p.f_d * std::pow(base, p.f_d - 1.0);
  const SymTensor2 anti = symmetrize(matrix_product(D, C) ) * 2.0;  // DC + CD
  return pref * (anti * (-1.0 / t2) + C * (2.0 * m / (t2 * t2)));
}

double psi_e(const SymTensor2& C, const SymTensor2& D, const MaterialParams& p) {
  const double fac = (1.0 - p.k_ani) * f_iso(D, p) + p.k_ani * f_ani(C, D, p);
  return fac * p.hyperelastic().energy(C);
}

double psi_d(double xi_d, const MaterialParams& p) {
  return p.r_d * (xi_d + (std::exp(-p.s_d * xi_d) - 1.0) / p.s_d) +
         0.5 * p.H_d * xi_d * xi_d;
}

double kinematic_branch(double x, const MaterialParams& p) {
  const double e = -1.0 / p.n_h;
  if (x <= p.a_h) return std::pow(1.0 - x, e);
  // second-order Taylor expansion about a_h
  const double u = 1.0 - p.a_h;
  const double g0 = std::pow(u, e);
  const double g1 = (1.0 / p.n_h) * std::pow(u, e - 1.0);
  const double g2 = (1.0 / p.n_h) * (1.0 / p.n_h + 1.0) * std::pow(u, e - 2.0);
  const double dx = x - p.a_h;
  return g0 + g1 * dx + 0.5 * g2 * dx * dx;
}

double psi_h(const SymTensor2& D, const MaterialParams& p) {
  const double w = 1.0 - 1.0 / p.n_h;
  auto smooth = [&](double x) {
    return p.K_h * (-std::pow(1.0 - x, w) / w - x + 1.0 / w);
  };
  double e = 0.0;
  const std::array<double, 3> lam =
      is_zero(D) ? std::array<double, 3>{0.0, 0.0, 0.0} : sym_eigenvalues(D);
  for (double x : lam) {
    if (x <= p.a_h) {
      e += smooth(x);
    } else {
      // integral of the Taylor-continued force branch, keeps psi_h C2
      const double u = 1.0 - p.a_h;
      const double ee = -1.0 / p.n_h;
      const double g0 = std::pow(u, ee);
      const double g1 = (1.0 / p.n_h) * std::pow(u, ee - 1.0);
      const double g2 = (1.0 / p.n_h) * (1.0 / p.n_h + 1.0) * std::pow(u, ee - 2.0);
      const double dx = x - p.a_h;
      e += smooth(p.a_h) +
           p.K_h * ((g0 - 1.0) * dx + 0.5 * g1 * dx * dx + g2 * dx * dx * dx / 6.0);
    }
  }
  return e;
}

SymTensor2 stress(const SymTensor2& C, const SymTensor2& D, const MaterialParams& p) {
  const HyperelasticLaw& law = p.hyperelastic();
  const double fac = (1.0 - p.k_ani) * f_iso(D, p) + p.k_ani * f_ani(C, D, p);
  SymTensor2 s = fac * law.stress2pk(C);
  if (p.k_ani != 0.0)
    s += (2.0 * p.k_ani * law.energy(C)) * dfani_dC(C, D, p);
  return s;
}

SymTensor2 driving_force_elastic(const SymTensor2& C, const SymTensor2& D,
                                 const MaterialParams& p) {
  const double psi = p.hyperelastic().energy(C);
  SymTensor2 y;
  if (p.k_ani != 1.0) y += (1.0 - p.k_ani) * dfiso_dD(D, p);
  if (p.k_ani != 0.0) y += p.k_ani * dfani_dD(C, D, p);
  return y * (-psi);
}

SymTensor2 driving_force_kinematic(const SymTensor2& D, const MaterialParams& p) {
  if (is_zero(D) || p.K_h == 0.0) return {};
  const Spectral s = spectral_decompose(D);
  SymTensor2 y;
  for (int i = 0; i < 3; ++i)
    y += p.K_h * (kinematic_branch(s.values[i], p) - 1.0) *
         SymTensor2::dyad(s.vectors[i]);
  return y;
}

double hardening_force(double xi_d, const MaterialParams& p) {
  return -(p.r_d * (1.0 - std::exp(-p.s_d * xi_d)) + p.H_d * xi_d);
}

Tensor4Sym interaction_tensor(const SymTensor2& D, const MaterialParams& p) {
  return Tensor4Sym::congruence(interaction_root(D, p));
}

double onset_function(const SymTensor2& Y, const SymTensor2& D, double xi_d,
                      const MaterialParams& p) {
  const SymTensor2 yp = positive_part(Y);
  double q;
  if (is_zero(D)) {
    q = double_contract(yp, yp);  // A acts as the identity
  } else {
    const SymTensor2 g = interaction_root(D, p);
    q = std::max(0.0, double_contract(yp, sandwich(g, yp)));
  }
  return std::sqrt(3.0) * std::sqrt(q) - (p.Y0 - hardening_force(xi_d, p));
}

SymTensor2 flow_direction(const SymTensor2& Y, const SymTensor2& D,
                          const MaterialParams& p, double* q_out) {
  const SymTensor2 g = interaction_root(D, p);
  const Spectral sy = spectral_decompose(Y);
  const SymTensor2 yp = positive_part(sy);
  const SymTensor2 m = sandwich(g, yp);  // A : Y+
  const double q = std::max(0.0, double_contract(yp, m));
  if (q_out) *q_out = q;
  if (q <= 0.0) return {};
  const SymTensor2 dir =
      apply_positive_part_derivative(sy, frobenius_norm(Y), m);
  return dir * (std::sqrt(3.0) / std::sqrt(q));
}

namespace {

struct ResolvedState {
  SymTensor2 D;
  SymTensor2 Y;
  double phi = 0.0;
};

}  // namespace

std::pair<InternalState, PointResponse> point_update(
    const SymTensor2& C, std::span<const double> dbar,
    const InternalState& state_n, double dt, const MaterialParams& p,
    MicromorphicModel kind) {
  const int n = tuple_size(kind);
  if (static_cast<int>(dbar.size()) != n)
    throw DimensionMismatch("point_update: dbar length does not match model");
  if (!(dt > 0.0)) throw ConfigError("point_update: dt must be positive");

  auto total_Y = [&](const SymTensor2& D) {
    SymTensor2 y = driving_force_elastic(C, D, p);
    y -= driving_force_kinematic(D, p);
    y -= nonlocal_driving_force(D, dbar, kind, p.H_micro);
    return y;
  };

  const SymTensor2& D_n = state_n.D;
  InternalState out = state_n;
  double dgamma = 0.0;
  double phi_final;
  int iters = 0;

  const SymTensor2 Y_trial = total_Y(D_n);
  const double phi_trial = onset_function(Y_trial, D_n, state_n.xi_d, p);

  if (phi_trial > 0.0) {
    // Viscously regularized consistency: Phi(dgamma) = eta_v dgamma / dt,
    // with D(dgamma) = D_n + dgamma * dPhi/dY resolved by fixed-point
    // iteration (flow direction recomputed each iterate, backward Euler).
    SymTensor2 D_warm = D_n;

    auto resolve = [&](double g) -> ResolvedState {
      ResolvedState r;
      SymTensor2 Dk = D_warm;
      double prev_err = std::numeric_limits<double>::max();
      for (int it = 0; it < 250; ++it) {
        const SymTensor2 Yk = total_Y(Dk);
        const SymTensor2 N = flow_direction(Yk, Dk, p);
        SymTensor2 D_next = D_n + g * N;
        const double err = frobenius_norm(D_next - Dk);
        if (err <= 1e-12 * std::max(1.0, frobenius_norm(D_next))) {
          r.D = D_next;
          r.Y = total_Y(D_next);
          r.phi = onset_function(r.Y, D_next, state_n.xi_d + g, p);
          D_warm = D_next;
          return r;
        }
        if (err > prev_err) D_next = 0.5 * (D_next + Dk);  // relax
        prev_err = err;
        Dk = D_next;
      }
      throw LocalNewtonDiverged("inner damage fixed point stalled at dgamma = " +
                                std::to_string(g));
    };

    const double tol = p.local_tol_factor * p.Y0;
    auto residual = [&](double g, ResolvedState& rs) {
      rs = resolve(g);
      return rs.phi - p.eta_v * g / dt;
    };

    // Newton on dgamma with a secant slope and a bisection-protected bracket
    // [lo, hi], r(lo) > 0 >= r(hi).
    double lo = 0.0;
    double hi = -1.0;
    ResolvedState rs;

    double g_prev = 0.0, r_prev = phi_trial;
    double g = 1e-8;
    double r = residual(g, rs);
    ++iters;
    bool done = std::abs(r) <= tol;
    if (r > 0.0)
      lo = g;
    else
      hi = g;

    while (!done) {
      if (++iters > p.max_local_iters)
        throw LocalNewtonDiverged(
            "local damage solve: no convergence in " +
            std::to_string(p.max_local_iters) + " iterations (phi_trial = " +
            std::to_string(phi_trial) + ")");

      const double slope = (r - r_prev) / (g - g_prev);
      double g_next;
      if (slope < 0.0) {
        g_next = g - r / slope;
      } else {
        g_next = -1.0;  // force bracket handling
      }

      if (hi < 0.0) {
        // no upper bound yet: accept forward Newton steps, else double
        if (!(g_next > lo)) g_next = std::max(2.0 * g, 1e-6);
        g_next = std::min(g_next, 64.0 * std::max(g, 1e-6));
      } else if (!(g_next > lo && g_next < hi)) {
        g_next = 0.5 * (lo + hi);
      }

      g_prev = g;
      r_prev = r;
      g = g_next;
      r = residual(g, rs);
      if (std::abs(r) <= tol) {
        done = true;
      } else if (r > 0.0) {
        lo = g;
      } else {
        hi = g;
      }
      if (hi > 0.0 && hi - lo <= 1e-16 * std::max(1.0, hi)) {
        // bracket collapsed onto a kink; accept the midpoint state
        done = true;
      }
    }

    dgamma = g;
    out.D = rs.D;
    out.xi_d = state_n.xi_d + g;  // dPhi/dR_d = 1
    phi_final = rs.phi;

    // Keep the stored eigenvalues strictly below one. The kinematic
    // hardening barrier makes this a no-op in practice.
    const auto lam = sym_eigenvalues(out.D);
    if (lam[0] >= 1.0) {
      const Spectral s = spectral_decompose(out.D);
      SymTensor2 clamped;
      for (int i = 0; i < 3; ++i)
        clamped += std::min(s.values[i], 1.0 - 1e-12) *
                   SymTensor2::dyad(s.vectors[i]);
      out.D = clamped;
    }
  } else {
    phi_final = phi_trial;
  }

  PointResponse resp;
  resp.S = stress(C, out.D, p);
  resp.Y_e = driving_force_elastic(C, out.D, p);
  resp.Y_h = driving_force_kinematic(out.D, p);
  resp.Y_dbar = nonlocal_driving_force(out.D, dbar, kind, p.H_micro);
  resp.Y = resp.Y_e - resp.Y_h - resp.Y_dbar;
  resp.R_d = hardening_force(out.xi_d, p);
  resp.n_dbar = n;
  tuple_value(out.D, kind, std::span<double>(resp.d.data(), kMaxNonlocal));
  for (int i = 0; i < n; ++i)
    resp.xi0[i] = -p.H_micro[static_cast<size_t>(i)] * (resp.d[i] - dbar[i]);
  resp.dgamma = dgamma;
  resp.phi = phi_final;
  resp.local_iters = iters;
  resp.psi_e = psi_e(C, out.D, p);
  resp.psi_d = psi_d(out.xi_d, p);
  resp.psi_h = psi_h(out.D, p);
  return {out, resp};
}

TangentBlocks consistent_tangent(const SymTensor2& C,
                                 std::span<const double> dbar,
                                 const InternalState& state_n, double dt,
                                 const MaterialParams& p,
                                 MicromorphicModel kind, double rel_step) {
  const int n = tuple_size(kind);
  TangentBlocks tb;
  tb.n_dbar = n;

  std::array<double, kMaxNonlocal> db{};
  for (int i = 0; i < n; ++i) db[static_cast<size_t>(i)] = dbar[static_cast<size_t>(i)];
  const std::span<const double> dspan(db.data(), static_cast<size_t>(n));

  const double hC = rel_step * std::max(1.0, frobenius_norm(C));
  for (int k = 0; k < 6; ++k) {
    SymTensor2 Cp = C, Cm = C;
    Cp[k] += hC;
    Cm[k] -= hC;
    const auto rp = point_update(Cp, dspan, state_n, dt, p, kind).second;
    const auto rm = point_update(Cm, dspan, state_n, dt, p, kind).second;
    // Perturbing stored component k means the tensor direction
    // e_i(x)e_j + e_j(x)e_i for shear slots; Mandel column scaling handles it.
    const auto col = to_mandel((rp.S - rm.S) * (1.0 / (2.0 * hC)));
    for (int i = 0; i < 6; ++i) tb.dS_dC(i, k) = col[i] / kMandelFactor[k];
    for (int i = 0; i < n; ++i) {
      const double diff = (rp.xi0[i] - rm.xi0[i]) / (2.0 * hC);
      // gradient tensor G with dxi0 = G : dC
      tb.dxi0_dC[static_cast<size_t>(i)][k] = (k < 3) ? diff : 0.5 * diff;
    }
  }

  for (int j = 0; j < n; ++j) {
    const double hd = rel_step * std::max(1.0, std::abs(db[static_cast<size_t>(j)]));
    auto dbp = db, dbm = db;
    dbp[static_cast<size_t>(j)] += hd;
    dbm[static_cast<size_t>(j)] -= hd;
    const auto rp =
        point_update(C, std::span<const double>(dbp.data(), static_cast<size_t>(n)),
                     state_n, dt, p, kind).second;
    const auto rm =
        point_update(C, std::span<const double>(dbm.data(), static_cast<size_t>(n)),
                     state_n, dt, p, kind).second;
    tb.dS_ddbar[static_cast<size_t>(j)] = (rp.S - rm.S) * (1.0 / (2.0 * hd));
    for (int i = 0; i < n; ++i)
      tb.dxi0_ddbar[static_cast<size_t>(i)][static_cast<size_t>(j)] =
          (rp.xi0[i] - rm.xi0[i]) / (2.0 * hd);
  }
  return tb;
}

}  // namespace anidamage
