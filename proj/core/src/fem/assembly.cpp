// SPDX-License-Identifier: Apache-2.0

#include "anidamage/fem/assembly.hpp"

#include <algorithm>
#include <limits>

namespace anidamage {
namespace fem {

namespace {

// Rethrows constitutive errors with the element id attached, keeping types.
[[noreturn]] void rethrow_with_element(size_t e) {
  const std::string ctx = "element " + std::to_string(e) + ": ";
  try {
    throw;
  } catch (const NonPositiveJacobian& err) {
    throw NonPositiveJacobian(ctx + err.what());
  } catch (const LocalNewtonDiverged& err) {
    throw LocalNewtonDiverged(ctx + err.what());
  } catch (const SingularTensor& err) {
    throw SingularTensor(ctx + err.what());
  } catch (const Error& err) {
    throw StepFailed(ctx + err.what());
  }
}

}  // namespace

Assembler::Assembler(const Mesh& mesh, const DofMap& dofs, ElementModel model,
                     int threads)
    : mesh_(&mesh), dofs_(&dofs), model_(model), threads_(threads) {
  const int ne = mesh.n_elements();
  geometry_.reserve(static_cast<size_t>(ne));
  for (int e = 0; e < ne; ++e) geometry_.push_back(element_geometry(mesh, e));

  const int n = model_.n_dbar();
  const int nd = model_.n_elem_dofs();
  element_dofs_.resize(static_cast<size_t>(ne));
  for (int e = 0; e < ne; ++e) {
    auto& map = element_dofs_[static_cast<size_t>(e)];
    map.resize(static_cast<size_t>(nd));
    const auto& conn = mesh.elements[static_cast<size_t>(e)];
    for (int a = 0; a < 8; ++a)
      for (int i = 0; i < 3; ++i)
        map[static_cast<size_t>(3 * a + i)] = dofs.dof(conn[static_cast<size_t>(a)], i);
    for (int a = 0; a < 8; ++a)
      for (int k = 0; k < n; ++k)
        map[static_cast<size_t>(24 + a * n + k)] = dofs.dof(conn[static_cast<size_t>(a)], 3 + k);
  }

  // Sparsity pattern with Dirichlet elimination baked in.
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(static_cast<size_t>(ne) * static_cast<size_t>(nd) * static_cast<size_t>(nd) / 2);
  for (int e = 0; e < ne; ++e) {
    const auto& map = element_dofs_[static_cast<size_t>(e)];
    for (int i = 0; i < nd; ++i) {
      if (dofs.is_constrained(map[static_cast<size_t>(i)])) continue;
      for (int j = 0; j < nd; ++j) {
        if (dofs.is_constrained(map[static_cast<size_t>(j)])) continue;
        trips.emplace_back(map[static_cast<size_t>(i)], map[static_cast<size_t>(j)], 0.0);
      }
    }
  }
  for (int d = 0; d < dofs.ndof(); ++d) trips.emplace_back(d, d, 0.0);
  pattern_.resize(dofs.ndof(), dofs.ndof());
  pattern_.setFromTriplets(trips.begin(), trips.end());
  pattern_.makeCompressed();

  // Slot lookup per element (column-major CSC binary search, done once).
  const int* outer = pattern_.outerIndexPtr();
  const int* inner = pattern_.innerIndexPtr();
  auto slot_of = [&](int row, int col) {
    const int lo = outer[col], hi = outer[col + 1];
    const int* it = std::lower_bound(inner + lo, inner + hi, row);
    return static_cast<int>(it - inner);
  };
  slots_.resize(static_cast<size_t>(ne));
  for (int e = 0; e < ne; ++e) {
    const auto& map = element_dofs_[static_cast<size_t>(e)];
    auto& sl = slots_[static_cast<size_t>(e)];
    sl.assign(static_cast<size_t>(nd) * static_cast<size_t>(nd), -1);
    for (int i = 0; i < nd; ++i) {
      if (dofs.is_constrained(map[static_cast<size_t>(i)])) continue;
      for (int j = 0; j < nd; ++j) {
        if (dofs.is_constrained(map[static_cast<size_t>(j)])) continue;
        sl[static_cast<size_t>(i * nd + j)] =
            slot_of(map[static_cast<size_t>(i)], map[static_cast<size_t>(j)]);
      }
    }
  }
}

void Assembler::gather(const Eigen::VectorXd& x, int e, std::vector<double>& ue,
                       std::vector<double>& de) const {
  const int n = model_.n_dbar();
  const auto& map = element_dofs_[static_cast<size_t>(e)];
  ue.resize(24);
  de.resize(static_cast<size_t>(8 * n));
  for (int i = 0; i < 24; ++i) ue[static_cast<size_t>(i)] = x(map[static_cast<size_t>(i)]);
  for (int i = 0; i < 8 * n; ++i)
    de[static_cast<size_t>(i)] = x(map[static_cast<size_t>(24 + i)]);
}

void Assembler::add_pressure(const Eigen::VectorXd& x, double pressure_factor,
                             Eigen::VectorXd& f_ext) const {
  if (!pressure_ || pressure_factor == 0.0) return;
  const double p = pressure_->magnitude * pressure_factor;
  for (const auto& ef : pressure_->faces) {
    const auto& conn = mesh_->elements[static_cast<size_t>(ef[0])];
    const auto& fl = hex8_face_nodes(ef[1]);
    std::array<Vec3, 4> X, u;
    std::array<int, 4> gnodes;
    for (int a = 0; a < 4; ++a) {
      const int node = conn[static_cast<size_t>(fl[static_cast<size_t>(a)])];
      gnodes[static_cast<size_t>(a)] = node;
      X[static_cast<size_t>(a)] = mesh_->nodes[static_cast<size_t>(node)];
      for (int c = 0; c < 3; ++c)
        u[static_cast<size_t>(a)][static_cast<size_t>(c)] = x(dofs_->dof(node, c));
    }
    std::array<double, 12> f;
    face_pressure_force(X, u, p, f);
    for (int a = 0; a < 4; ++a)
      for (int c = 0; c < 3; ++c)
        f_ext(dofs_->dof(gnodes[static_cast<size_t>(a)], c)) += f[static_cast<size_t>(3 * a + c)];
  }
}

void Assembler::residual(const Eigen::VectorXd& x,
                         const std::vector<InternalState>& states_n, double dt,
                         double pressure_factor, Eigen::VectorXd& r,
                         std::vector<InternalState>* states_out,
                         ResidualStats* stats,
                         Eigen::VectorXd* f_external) const {
  const int ne = mesh_->n_elements();
  const int n = model_.n_dbar();
  const int nd = model_.n_elem_dofs();

  struct ElemOut {
    std::vector<double> r;
    std::array<InternalState, 8> states;
    double energy = 0.0;
    double diss_min = std::numeric_limits<double>::max();
    double dg_min = std::numeric_limits<double>::max();
    double dg_max = 0.0;
    double eig_max = 0.0;
    double xi_dec_max = -std::numeric_limits<double>::max();
  };
  std::vector<ElemOut> out(static_cast<size_t>(ne));

  parallel_for(static_cast<size_t>(ne), threads_, [&](size_t e) {
    ElemOut& eo = out[e];
    eo.r.assign(static_cast<size_t>(nd), 0.0);
    std::vector<double> ue, de;
    gather(x, static_cast<int>(e), ue, de);
    ElementScratch scratch;
    std::array<InternalState, 8> st;
    try {
      element_residual(geometry_[e], model_, ue, de,
                       std::span<const InternalState>(states_n.data() + 8 * e, 8), dt,
                       std::span<double>(eo.r.data(), 24),
                       std::span<double>(eo.r.data() + 24, static_cast<size_t>(8 * n)),
                       st, stats ? &scratch : nullptr);
    } catch (...) {
      rethrow_with_element(e);
    }
    eo.states = st;
    if (stats) {
      eo.energy = scratch.stored_energy;
      for (int q = 0; q < 8; ++q) {
        const InternalState& s0 = states_n[8 * e + static_cast<size_t>(q)];
        const InternalState& s1 = st[static_cast<size_t>(q)];
        const PointResponse& resp = scratch.responses[static_cast<size_t>(q)];
        const double diss = double_contract(resp.Y, s1.D - s0.D) +
                            resp.R_d * (s1.xi_d - s0.xi_d);
        eo.diss_min = std::min(eo.diss_min, diss);
        eo.dg_min = std::min(eo.dg_min, resp.dgamma);
        eo.dg_max = std::max(eo.dg_max, resp.dgamma);
        eo.eig_max = std::max(eo.eig_max, sym_eigenvalues(s1.D)[0]);
        eo.xi_dec_max = std::max(eo.xi_dec_max, s0.xi_d - s1.xi_d);
      }
    }
  });

  r.setZero(dofs_->ndof());
  for (int e = 0; e < ne; ++e) {
    const auto& map = element_dofs_[static_cast<size_t>(e)];
    const auto& re = out[static_cast<size_t>(e)].r;
    for (int i = 0; i < nd; ++i) r(map[static_cast<size_t>(i)]) += re[static_cast<size_t>(i)];
  }
  if (states_out) {
    states_out->resize(static_cast<size_t>(8 * ne));
    for (int e = 0; e < ne; ++e)
      for (int q = 0; q < 8; ++q)
        (*states_out)[static_cast<size_t>(8 * e + q)] =
            out[static_cast<size_t>(e)].states[static_cast<size_t>(q)];
  }
  if (stats) {
    stats->stored_energy = 0.0;
    stats->point_dissipation_min = std::numeric_limits<double>::max();
    stats->dgamma_min = std::numeric_limits<double>::max();
    stats->dgamma_max = 0.0;
    stats->damage_eig_max = 0.0;
    stats->xi_decrease_max = -std::numeric_limits<double>::max();
    for (const auto& eo : out) {
      stats->stored_energy += eo.energy;
      stats->point_dissipation_min = std::min(stats->point_dissipation_min, eo.diss_min);
      stats->dgamma_min = std::min(stats->dgamma_min, eo.dg_min);
      stats->dgamma_max = std::max(stats->dgamma_max, eo.dg_max);
      stats->damage_eig_max = std::max(stats->damage_eig_max, eo.eig_max);
      stats->xi_decrease_max = std::max(stats->xi_decrease_max, eo.xi_dec_max);
    }
  }

  // follower pressure: r = f_int - f_ext
  Eigen::VectorXd f_ext = Eigen::VectorXd::Zero(dofs_->ndof());
  add_pressure(x, pressure_factor, f_ext);
  r -= f_ext;
  if (f_external) *f_external = f_ext;
}

void Assembler::tangent(const Eigen::VectorXd& x,
                        const std::vector<InternalState>& states_n, double dt,
                        double pressure_factor, TangentMode mode,
                        Eigen::SparseMatrix<double>& K) const {
  const int ne = mesh_->n_elements();
  const int nd = model_.n_elem_dofs();

  if (K.nonZeros() != pattern_.nonZeros()) K = pattern_;
  std::fill(K.valuePtr(), K.valuePtr() + K.nonZeros(), 0.0);

  std::vector<Eigen::MatrixXd> kes(static_cast<size_t>(ne));
  parallel_for(static_cast<size_t>(ne), threads_, [&](size_t e) {
    std::vector<double> ue, de;
    gather(x, static_cast<int>(e), ue, de);
    try {
      element_tangent(geometry_[e], model_, ue, de,
                      std::span<const InternalState>(states_n.data() + 8 * e, 8),
                      dt, kes[e], mode);
    } catch (...) {
      rethrow_with_element(e);
    }
  });

  double* vals = K.valuePtr();
  for (int e = 0; e < ne; ++e) {
    const auto& sl = slots_[static_cast<size_t>(e)];
    const Eigen::MatrixXd& ke = kes[static_cast<size_t>(e)];
    for (int i = 0; i < nd; ++i)
      for (int j = 0; j < nd; ++j) {
        const int s = sl[static_cast<size_t>(i * nd + j)];
        if (s >= 0) vals[s] += ke(i, j);
      }
  }

  // follower pressure load stiffness: r = f_int - f_ext, so subtract dF/du
  if (pressure_ && pressure_factor != 0.0) {
    const double p = pressure_->magnitude * pressure_factor;
    const int* outer = K.outerIndexPtr();
    const int* inner = K.innerIndexPtr();
    auto slot_of = [&](int row, int col) -> int {
      const int lo = outer[col], hi = outer[col + 1];
      const int* it = std::lower_bound(inner + lo, inner + hi, row);
      if (it == inner + hi || *it != row) return -1;
      return static_cast<int>(it - inner);
    };
    Eigen::MatrixXd kf;
    for (const auto& ef : pressure_->faces) {
      const auto& conn = mesh_->elements[static_cast<size_t>(ef[0])];
      const auto& fl = hex8_face_nodes(ef[1]);
      std::array<Vec3, 4> X, u;
      std::array<int, 4> gnodes;
      for (int a = 0; a < 4; ++a) {
        const int node = conn[static_cast<size_t>(fl[static_cast<size_t>(a)])];
        gnodes[static_cast<size_t>(a)] = node;
        X[static_cast<size_t>(a)] = mesh_->nodes[static_cast<size_t>(node)];
        for (int c = 0; c < 3; ++c)
          u[static_cast<size_t>(a)][static_cast<size_t>(c)] = x(dofs_->dof(node, c));
      }
      face_pressure_tangent(X, u, p, kf);
      for (int i = 0; i < 12; ++i)
        for (int j = 0; j < 12; ++j) {
          const int gi = dofs_->dof(gnodes[static_cast<size_t>(i / 3)], i % 3);
          const int gj = dofs_->dof(gnodes[static_cast<size_t>(j / 3)], j % 3);
          if (dofs_->is_constrained(gi) || dofs_->is_constrained(gj)) continue;
          const int s = slot_of(gi, gj);
          if (s >= 0) vals[s] -= kf(i, j);
        }
    }
  }

  // unit diagonal on constrained dofs
  for (int d : dofs_->constrained_dofs()) {
    const int* outer = K.outerIndexPtr();
    const int* inner = K.innerIndexPtr();
    const int lo = outer[d], hi = outer[d + 1];
    const int* it = std::lower_bound(inner + lo, inner + hi, d);
    vals[it - inner] = 1.0;
  }
}

}  // namespace fem
}  // namespace anidamage
