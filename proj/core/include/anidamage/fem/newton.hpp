// SPDX-License-Identifier: Apache-2.0
//
// Displacement-controlled load stepping with a full Newton solve per step,
// adaptive cutbacks on failure, and per-step bookkeeping (reactions, probe
// values, energy ledger, discrete dissipation statistics).
#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "anidamage/fem/assembly.hpp"
#include "anidamage/fem/linear_solver.hpp"

namespace anidamage {
namespace fem {

struct SolverOptions {
  double rel_tol = 1e-8;    // residual inf-norm relative to the step's first
  double abs_tol = 1e-10;   // absolute floor (N and N mm units)
  int max_iterations = 14;
  int max_cutbacks = 8;
  int threads = 1;
  TangentMode tangent_mode = TangentMode::ResidualFd;
  double divergence_factor = 1e8;  // abort the iteration on residual blow-up
};

struct LoadPhase {
  double to = 1.0;  // load factor this phase ends at
  int steps = 10;   // base steps across the phase
};

struct LoadProgram {
  std::vector<LoadPhase> phases = {{1.0, 10}};
  double total_time = 1.0;  // physical duration of t in [0,1] (s)

  std::vector<double> grid() const;  // base load-factor targets, ascending
};

struct StepRecord {
  int step = 0;
  double t = 0.0;     // load factor reached
  double time = 0.0;  // physical time (s)
  double dt = 0.0;    // physical step size (s)
  int iterations = 0;
  int cutbacks = 0;   // cutbacks spent reaching this step
  double residual0 = 0.0, residual = 0.0;
  std::vector<double> residual_history;
  std::map<std::string, Vec3> reactions;  // per node set, summed internal force
  double probe = 0.0;
  double reaction_scalar = 0.0;
  double ext_work = 0.0;       // accumulated external work (N mm)
  double stored_energy = 0.0;  // total Helmholtz energy (N mm)
  ResidualStats stats;
};

struct SolveReport {
  std::vector<StepRecord> steps;
  bool ok = true;
  std::string message;
};

// Scalar output channel of a run: a reaction component summed over a node
// set, or a torque about an axis through a point.
struct ReactionProbe {
  std::string node_set;
  int comp = 1;
};
struct MomentProbe {
  std::string node_set;
  Vec3 center{};
  int axis = 2;
};

class CoupledSystem {
public:
  CoupledSystem(Mesh mesh, MaterialParams params, MicromorphicModel kind);

  Mesh& mesh() { return mesh_; }
  const Mesh& mesh() const { return mesh_; }
  DofMap& dofs() { return dofs_; }
  const DofMap& dofs() const { return dofs_; }
  const MaterialParams& params() const { return params_; }
  MicromorphicModel kind() const { return kind_; }

  void set_pressure(const std::string& face_set, double magnitude);
  void set_reaction_probe(ReactionProbe p) { reaction_probe_ = std::move(p); }
  void set_moment_probe(MomentProbe p) { moment_probe_ = std::move(p); }
  // probe value recorded per step; defaults to the load factor
  void set_probe(std::function<double(double, const Eigen::VectorXd&)> fn) {
    probe_ = std::move(fn);
  }
  void set_probe_dof(int node, int comp);

  using StepCallback =
      std::function<void(const StepRecord&, const CoupledSystem&)>;

  // Runs the full program; returns the per-step report. A step that fails
  // after all cutbacks stops the run with ok = false (already-converged
  // steps stay recorded and committed).
  SolveReport run(const LoadProgram& program, const SolverOptions& options,
                  const StepCallback& on_step = {});

  const Eigen::VectorXd& solution() const { return x_; }
  const std::vector<InternalState>& states() const { return states_; }

  // Element-averaged damage tensor (cell field for output).
  std::vector<SymTensor2> element_damage_average() const;
  double nodal_value(int node, int comp) const { return x_(dofs_.dof(node, comp)); }

private:
  Mesh mesh_;
  MaterialParams params_;
  MicromorphicModel kind_;
  DofMap dofs_;
  std::optional<Assembler> assembler_;
  std::optional<PressureLoad> pressure_;

  Eigen::VectorXd x_;
  std::vector<InternalState> states_;

  std::optional<ReactionProbe> reaction_probe_;
  std::optional<MomentProbe> moment_probe_;
  std::function<double(double, const Eigen::VectorXd&)> probe_;
};

}  // namespace fem
}  // namespace anidamage
