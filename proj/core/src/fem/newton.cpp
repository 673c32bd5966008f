// SPDX-License-Identifier: Apache-2.0

#include "anidamage/fem/newton.hpp"

#include <cmath>
#include <limits>

namespace anidamage {
namespace fem {

std::vector<double> LoadProgram::grid() const {
  std::vector<double> g = {0.0};
  double prev = 0.0;
  for (const auto& ph : phases) {
    if (!(ph.to > prev))
      throw ConfigError("load program phases must have increasing targets");
    if (ph.steps < 1) throw ConfigError("load phase needs at least one step");
    for (int k = 1; k <= ph.steps; ++k)
      g.push_back(prev + (ph.to - prev) * k / ph.steps);
    prev = ph.to;
  }
  return g;
}

CoupledSystem::CoupledSystem(Mesh mesh, MaterialParams params,
                             MicromorphicModel kind)
    : mesh_(std::move(mesh)), params_(std::move(params)), kind_(kind),
      dofs_(mesh_.n_nodes(), tuple_size(kind)) {
  params_.validate(kind_);
  validate_mesh(mesh_);
  x_ = Eigen::VectorXd::Zero(dofs_.ndof());
  states_.assign(static_cast<size_t>(8 * mesh_.n_elements()), InternalState{});
}

void CoupledSystem::set_pressure(const std::string& face_set, double magnitude) {
  pressure_ = PressureLoad{mesh_.face_set(face_set), magnitude};
}

void CoupledSystem::set_probe_dof(int node, int comp) {
  const int d = dofs_.dof(node, comp);
  probe_ = [d](double, const Eigen::VectorXd& x) { return x(d); };
}

std::vector<SymTensor2> CoupledSystem::element_damage_average() const {
  std::vector<SymTensor2> avg(static_cast<size_t>(mesh_.n_elements()));
  for (size_t e = 0; e < avg.size(); ++e) {
    SymTensor2 s;
    for (int q = 0; q < 8; ++q) s += states_[8 * e + static_cast<size_t>(q)].D;
    avg[e] = s * 0.125;
  }
  return avg;
}

namespace {

double free_inf_norm(const Eigen::VectorXd& r, const DofMap& dofs) {
  double m = 0.0;
  for (int d = 0; d < r.size(); ++d)
    if (!dofs.is_constrained(d)) m = std::max(m, std::abs(r(d)));
  return m;
}

}  // namespace

SolveReport CoupledSystem::run(const LoadProgram& program,
                               const SolverOptions& options,
                               const StepCallback& on_step) {
  SolveReport report;
  ElementModel model{&params_, kind_};
  if (!assembler_) {
    assembler_.emplace(mesh_, dofs_, model, options.threads);
    if (pressure_) assembler_->set_pressure(*pressure_);
  }
  Assembler& asmb = *assembler_;
  SparseDirectSolver solver;

  const std::vector<double> grid = program.grid();
  const double T = program.total_time;

  double t_cur = 0.0;
  double time_cur = 0.0;
  double ext_work = 0.0;
  Eigen::VectorXd r_committed = Eigen::VectorXd::Zero(dofs_.ndof());
  Eigen::VectorXd fext_committed = Eigen::VectorXd::Zero(dofs_.ndof());
  bool have_committed_forces = false;

  int step_counter = 0;
  size_t gi = 1;
  double scale = 1.0;
  int consecutive_failures = 0;
  int successes_at_reduced = 0;

  while (gi < grid.size()) {
    const double t_goal = grid[gi];
    const double base = t_goal - grid[gi - 1];
    const double t_try = std::min(t_goal, t_cur + scale * base);
    const double dt = (t_try - t_cur) * T;

    // --- one Newton-solved step attempt at load factor t_try --------------
    Eigen::VectorXd x_try = x_;
    dofs_.apply_prescribed(t_try, std::span<double>(x_try.data(), static_cast<size_t>(x_try.size())));

    StepRecord rec;
    rec.step = step_counter;
    rec.t = t_try;
    rec.time = time_cur + dt;
    rec.dt = dt;
    rec.cutbacks = consecutive_failures;

    bool converged = false;
    std::vector<InternalState> states_new;
    Eigen::VectorXd r, f_ext;
    ResidualStats stats;

    try {
      asmb.residual(x_try, states_, dt, t_try, r, &states_new, &stats, &f_ext);
      double res = free_inf_norm(r, dofs_);
      rec.residual0 = res;
      rec.residual_history.push_back(res);
      const double tol = std::max(options.rel_tol * res, options.abs_tol);

      Eigen::SparseMatrix<double> K;
      for (int it = 0; it < options.max_iterations && !converged; ++it) {
        if (res <= tol || !std::isfinite(res)) break;
        asmb.tangent(x_try, states_, dt, t_try, options.tangent_mode, K);
        Eigen::VectorXd rhs = -r;
        for (int d : dofs_.constrained_dofs()) rhs(d) = 0.0;
        const Eigen::VectorXd dx = solver.solve(K, rhs);
        x_try += dx;
        asmb.residual(x_try, states_, dt, t_try, r, &states_new, &stats, &f_ext);
        res = free_inf_norm(r, dofs_);
        rec.residual_history.push_back(res);
        rec.iterations = it + 1;
        if (!std::isfinite(res) ||
            res > options.divergence_factor * std::max(rec.residual0, 1.0))
          break;
        if (res <= tol) converged = true;
      }
      if (rec.residual0 <= tol) converged = true;  // nothing to solve
      rec.residual = res;
    } catch (const Error&) {
      converged = false;
    }

    if (!converged) {
      ++consecutive_failures;
      successes_at_reduced = 0;
      if (consecutive_failures > options.max_cutbacks) {
        report.ok = false;
        report.message = "step to t = " + std::to_string(t_try) + " failed after " +
                         std::to_string(options.max_cutbacks) + " cutbacks";
        return report;
      }
      scale *= 0.5;
      continue;
    }

    // --- commit ------------------------------------------------------------
    // external work: trapezoidal reaction work on constrained dofs plus
    // follower-pressure work on all dofs
    if (!have_committed_forces) {
      r_committed.setZero(dofs_.ndof());
      fext_committed.setZero(dofs_.ndof());
      have_committed_forces = true;
    }
    const Eigen::VectorXd dx_step = x_try - x_;
    double w_inc = 0.0;
    for (int d : dofs_.constrained_dofs())
      w_inc += 0.5 * (r_committed(d) + r(d)) * dx_step(d);
    w_inc += 0.5 * (fext_committed + f_ext).dot(dx_step);
    ext_work += w_inc;

    x_ = x_try;
    states_ = states_new;
    r_committed = r;
    fext_committed = f_ext;
    t_cur = t_try;
    time_cur += dt;
    consecutive_failures = 0;
    if (scale < 1.0 && ++successes_at_reduced >= 2) {
      scale = std::min(1.0, 2.0 * scale);
      successes_at_reduced = 0;
    }

    rec.ext_work = ext_work;
    rec.stored_energy = stats.stored_energy;
    rec.stats = stats;
    for (const auto& [name, nodes] : mesh_.node_sets) {
      Vec3 sum{};
      for (int a : nodes)
        for (int c = 0; c < 3; ++c) sum[static_cast<size_t>(c)] += r(dofs_.dof(a, c));
      rec.reactions[name] = sum;
    }
    if (reaction_probe_) {
      rec.reaction_scalar =
          rec.reactions.at(reaction_probe_->node_set)[static_cast<size_t>(reaction_probe_->comp)];
    } else if (moment_probe_) {
      double m = 0.0;
      const int ax = moment_probe_->axis;
      const int a1 = (ax + 1) % 3, a2 = (ax + 2) % 3;
      for (int a : mesh_.node_set(moment_probe_->node_set)) {
        Vec3 pos;
        for (int c = 0; c < 3; ++c)
          pos[static_cast<size_t>(c)] = mesh_.nodes[static_cast<size_t>(a)][static_cast<size_t>(c)] +
                                        x_(dofs_.dof(a, c)) -
                                        moment_probe_->center[static_cast<size_t>(c)];
        const double f1 = r(dofs_.dof(a, a1));
        const double f2 = r(dofs_.dof(a, a2));
        m += pos[static_cast<size_t>(a1)] * f2 - pos[static_cast<size_t>(a2)] * f1;
      }
      rec.reaction_scalar = m;
    }
    rec.probe = probe_ ? probe_(t_cur, x_) : t_cur;

    report.steps.push_back(rec);
    if (on_step) on_step(report.steps.back(), *this);
    ++step_counter;
    if (t_cur >= t_goal - 1e-12) ++gi;
  }

  return report;
}

}  // namespace fem
}  // namespace anidamage
