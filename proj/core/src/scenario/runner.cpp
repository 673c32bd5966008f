// SPDX-License-Identifier: Apache-2.0

#include "anidamage/scenario/runner.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "anidamage/scenario/mesh_gen.hpp"

namespace anidamage {
namespace scenario {

namespace {

fem::Mesh build_mesh(const MeshSpec& spec) {
  if (spec.source == "unit-cube") return unit_cube_mesh();
  if (spec.source.rfind("notched", 0) == 0) {
    int nx = spec.nx, ny = spec.ny;
    if (spec.source != "notched") {
      notched_level_dims(spec.source.substr(8), nx, ny);
    } else if (nx <= 0 || ny <= 0) {
      throw ConfigError("mesh source 'notched' needs explicit nx/ny");
    }
    return notched_mesh(nx, ny);
  }
  if (spec.source == "file") {
    if (spec.file.empty()) throw ConfigError("mesh source 'file' needs mesh.file");
    return read_mesh_file(spec.file);
  }
  throw ConfigError("unknown mesh source '" + spec.source + "'");
}

// DOFs that are configured inert (H_i = A_i = 0) have no stiffness; pin them
// to zero on all nodes, which is also how the single-component and local
// studies are defined.
void pin_inert_nonlocal(fem::CoupledSystem& sys) {
  const MaterialParams& p = sys.params();
  const int n = tuple_size(sys.kind());
  std::vector<int> all(static_cast<size_t>(sys.mesh().n_nodes()));
  for (int a = 0; a < sys.mesh().n_nodes(); ++a) all[static_cast<size_t>(a)] = a;
  for (int k = 0; k < n; ++k)
    if (p.H_micro[static_cast<size_t>(k)] == 0.0 && p.A_micro[static_cast<size_t>(k)] == 0.0)
      sys.dofs().constrain_zero(all, 3 + k);
}

int parse_dof_token(const std::string& tok) {
  if (tok == "ux") return 0;
  if (tok == "uy") return 1;
  if (tok == "uz") return 2;
  if (tok.rfind("dbar", 0) == 0) return 3 + std::stoi(tok.substr(4)) - 1;
  throw ConfigError("unknown dof token '" + tok + "'");
}

void apply_scenario_bcs(const StudyConfig& cfg, fem::CoupledSystem& sys) {
  fem::Mesh& mesh = sys.mesh();
  fem::DofMap& dofs = sys.dofs();
  const double eps = 1e-9;

  if (is_single_element_scenario(cfg.scenario)) {
    const auto& bottom = mesh.node_set("bottom");
    const auto& top = mesh.node_set("top");
    if (cfg.scenario == "single-element-tension") {
      dofs.constrain_zero(bottom, 2);
      dofs.constrain_linear(top, 2, cfg.load.u_max);
      // rigid-body pins that do not disturb lateral contraction
      const auto origin = nodes_where(mesh, [&](const Vec3& x) {
        return std::abs(x[0]) < eps && std::abs(x[1]) < eps && std::abs(x[2]) < eps;
      });
      const auto xaxis = nodes_where(mesh, [&](const Vec3& x) {
        return std::abs(x[0] - 1.0) < eps && std::abs(x[1]) < eps && std::abs(x[2]) < eps;
      });
      dofs.constrain_zero(origin, 0);
      dofs.constrain_zero(origin, 1);
      dofs.constrain_zero(xaxis, 1);
    } else if (cfg.scenario == "single-element-uniaxial-strain") {
      for (int a = 0; a < mesh.n_nodes(); ++a) {
        dofs.constrain(a, 0, [](double) { return 0.0; });
        dofs.constrain(a, 1, [](double) { return 0.0; });
      }
      dofs.constrain_zero(bottom, 2);
      dofs.constrain_linear(top, 2, cfg.load.u_max);
    } else if (cfg.scenario == "single-element-simple-shear") {
      for (int c = 0; c < 3; ++c) dofs.constrain_zero(bottom, c);
      dofs.constrain_linear(top, 0, cfg.load.u_max);
      dofs.constrain_zero(top, 1);
      dofs.constrain_zero(top, 2);
    } else {  // torsion
      for (int c = 0; c < 3; ++c) dofs.constrain_zero(bottom, c);
      const double theta_max = cfg.load.twist_max;
      for (int a : top) {
        const Vec3 X = mesh.nodes[static_cast<size_t>(a)];
        const double rx = X[0] - 0.5, ry = X[1] - 0.5;
        dofs.constrain(a, 0, [=](double t) {
          const double th = theta_max * t;
          return rx * std::cos(th) - ry * std::sin(th) - rx;
        });
        dofs.constrain(a, 1, [=](double t) {
          const double th = theta_max * t;
          return rx * std::sin(th) + ry * std::cos(th) - ry;
        });
        dofs.constrain(a, 2, [](double) { return 0.0; });
      }
    }
  } else if (cfg.scenario == "notched") {
    const auto& bottom = mesh.node_set("bottom");
    const auto& top = mesh.node_set("top");
    dofs.constrain_zero(bottom, 0);
    dofs.constrain_zero(bottom, 1);
    dofs.constrain_zero(top, 0);
    dofs.constrain_linear(top, 1, cfg.load.u_max);
    // plane strain: single-layer mesh with all out-of-plane motion pinned
    for (int a = 0; a < mesh.n_nodes(); ++a)
      dofs.constrain(a, 2, [](double) { return 0.0; });
  } else if (cfg.scenario == "custom") {
    for (const auto& bc : cfg.bcs) {
      const auto& set = mesh.node_set(bc.node_set);
      std::istringstream iss(bc.dofs);
      std::string tok;
      while (iss >> tok) {
        const int comp = parse_dof_token(tok);
        const double amp = bc.amplitude;
        for (int a : set)
          dofs.constrain(a, comp, [amp](double t) { return amp * t; });
      }
    }
  } else {
    throw ConfigError("unknown scenario '" + cfg.scenario + "'");
  }

  pin_inert_nonlocal(sys);
}

void configure_probes(const StudyConfig& cfg, fem::CoupledSystem& sys) {
  fem::Mesh& mesh = sys.mesh();
  if (cfg.scenario == "single-element-torsion") {
    sys.set_moment_probe({"top", {0.5, 0.5, 0.0}, 2});
    const double theta_max = cfg.load.twist_max;
    sys.set_probe([theta_max](double t, const Eigen::VectorXd&) { return theta_max * t; });
    return;
  }
  int comp = cfg.reaction_comp;
  std::string set = cfg.reaction_set;
  if (is_single_element_scenario(cfg.scenario)) {
    set = "top";
    comp = cfg.scenario == "single-element-simple-shear" ? 0 : 2;
  } else if (cfg.scenario == "notched") {
    set = "top";
    comp = 1;
  }
  sys.set_reaction_probe({set, comp});
  const auto& nodes = mesh.node_set(set);
  if (!nodes.empty()) sys.set_probe_dof(nodes.front(), comp);
}

fem::TangentMode pick_tangent_mode(const StudyConfig& cfg, const fem::Mesh& mesh) {
  if (cfg.solver.tangent == "element-fd") return fem::TangentMode::ResidualFd;
  if (cfg.solver.tangent == "point-fd") return fem::TangentMode::PointFd;
  if (cfg.solver.tangent != "auto")
    throw ConfigError("unknown tangent mode '" + cfg.solver.tangent + "'");
  // the two modes agree to FD accuracy; the point route is much cheaper on
  // larger meshes
  return mesh.n_elements() > 32 ? fem::TangentMode::PointFd
                                : fem::TangentMode::ResidualFd;
}

}  // namespace

std::shared_ptr<fem::CoupledSystem> build_system(const StudyConfig& cfg) {
  fem::Mesh mesh = build_mesh(cfg.mesh);
  MaterialParams params = build_material(cfg);
  auto sys = std::make_shared<fem::CoupledSystem>(std::move(mesh), std::move(params),
                                                  cfg.model.kind);
  apply_scenario_bcs(cfg, *sys);
  configure_probes(cfg, *sys);
  if (!cfg.pressure_face_set.empty())
    sys->set_pressure(cfg.pressure_face_set, cfg.load.pressure_max);
  return sys;
}

RunResult run_study(const StudyConfig& cfg_in, const RunOptions& opts) {
  StudyConfig cfg = cfg_in;
  if (!opts.out_dir_override.empty()) cfg.output.dir = opts.out_dir_override;
  if (opts.threads_override > 0) cfg.solver.threads = opts.threads_override;
  if (cfg.load.phases.empty()) cfg.load.phases = {{1.0, 100}};

  RunResult result;
  result.config = cfg;
  result.system = build_system(cfg);
  fem::CoupledSystem& sys = *result.system;

  fem::LoadProgram program;
  program.phases = cfg.load.phases;
  program.total_time = cfg.load.total_time;

  fem::SolverOptions sopt;
  sopt.rel_tol = cfg.solver.rel_tol;
  sopt.abs_tol = cfg.solver.abs_tol;
  sopt.max_iterations = cfg.solver.max_iterations;
  sopt.max_cutbacks = cfg.load.max_cutbacks;
  sopt.threads = cfg.solver.threads;
  sopt.tangent_mode = pick_tangent_mode(cfg, sys.mesh());

  namespace fs = std::filesystem;
  const fs::path out_dir = cfg.output.dir;
  if (opts.write_outputs) {
    fs::create_directories(out_dir);
    std::ofstream echo(out_dir / "config-echo.json");
    echo << study_config_to_json(cfg);
  }

  int field_counter = 0;
  auto on_step = [&](const fem::StepRecord& rec, const fem::CoupledSystem& s) {
    CurveRecord cr;
    cr.step = rec.step;
    cr.time = rec.time;
    cr.load_factor = rec.t;
    cr.probe = rec.probe;
    cr.reaction = rec.reaction_scalar;
    cr.newton_iters = rec.iterations;
    cr.cutbacks = rec.cutbacks;
    result.curve.push_back(cr);
    if (opts.write_outputs && cfg.output.fields_every > 0 &&
        rec.step % cfg.output.fields_every == 0) {
      char name[32];
      std::snprintf(name, sizeof(name), "fields_%04d.vtk", field_counter++);
      write_vtk(out_dir / name, s, cfg.scenario);
    }
  };

  result.report = sys.run(program, sopt, on_step);

  if (opts.write_outputs) {
    write_curve_csv(out_dir / "run.csv", result.curve);
    write_solve_report(out_dir / "solve_report.csv", result.report);
    char name[32];
    std::snprintf(name, sizeof(name), "fields_%04d.vtk", field_counter);
    write_vtk(out_dir / name, sys, cfg.scenario + " (final)");
  }
  return result;
}

}  // namespace scenario
}  // namespace anidamage
