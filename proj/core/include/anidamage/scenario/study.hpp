// SPDX-License-Identifier: Apache-2.0
//
// Study configuration: scenario presets, JSON (de)serialization and the
// mapping onto material parameters, meshes and boundary conditions. The JSON
// schema is documented in docs/formats.md.
#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "anidamage/fem/newton.hpp"
#include "anidamage/material.hpp"

namespace anidamage {
namespace scenario {

struct MeshSpec {
  // "unit-cube", "notched-coarse", "notched-medium", "notched-fine",
  // "notched" (with explicit nx/ny), or "file"
  std::string source = "unit-cube";
  std::string file;
  int nx = 0, ny = 0;
};

struct ModelSpec {
  MicromorphicModel kind = MicromorphicModel::C;
  // Per-DOF activity mask (empty = all active). Inactive DOFs get
  // H_i = A_i = 0 and a homogeneous Dirichlet pin on all nodes.
  std::vector<bool> active;
  bool local = false;  // all DOFs inactive: unregularized damage
  std::optional<double> H_value;  // uniform override of the penalty (MPa)
  std::optional<double> A_value;  // uniform override of the gradient (MPa mm^2)
};

struct LoadSpec {
  double u_max = 1.0;      // prescribed displacement amplitude (mm)
  double twist_max = 1.0;  // torsion amplitude (rad)
  double pressure_max = 0.0;
  double total_time = 1.0;  // s
  std::vector<fem::LoadPhase> phases;  // defaults filled by the presets
  int max_cutbacks = 8;
};

struct SolverSpec {
  double rel_tol = 1e-8;
  double abs_tol = 1e-10;
  int max_iterations = 14;
  int threads = 1;
  std::string tangent = "auto";  // "auto" | "element-fd" | "point-fd"
};

struct OutputSpec {
  std::string dir = "out";
  int fields_every = 0;  // VTK cadence in steps (0 = final state only)
};

struct DirichletSpec {
  std::string node_set;
  std::string dofs;         // e.g. "ux uy" or "uz" or "dbar1"
  double amplitude = 0.0;   // value = amplitude * load factor
};

struct StudyConfig {
  std::string scenario = "custom";
  std::string material_preset = "set1";  // "set1" | "set2"
  std::map<std::string, double> material_overrides;
  ModelSpec model;
  MeshSpec mesh;
  LoadSpec load;
  SolverSpec solver;
  OutputSpec output;
  // custom-scenario boundary conditions
  std::vector<DirichletSpec> bcs;
  std::string pressure_face_set;
  std::string reaction_set = "top";
  int reaction_comp = 1;
};

// Known scenario ids.
bool is_single_element_scenario(const std::string& id);

StudyConfig preset_single_element(const std::string& kind, double k_ani);
StudyConfig preset_notched(const std::string& mesh_level, MicromorphicModel model);

// Materializes MaterialParams from preset + overrides + model spec masks.
MaterialParams build_material(const StudyConfig& cfg);
// Named scalar override ("k_ani", "Y0", "lambda", "mu", ...).
void apply_material_override(MaterialParams& p, const std::string& name, double value);

StudyConfig parse_study_config_json(const std::string& text);
StudyConfig load_study_config(const std::filesystem::path& path);
std::string study_config_to_json(const StudyConfig& cfg);

}  // namespace scenario
}  // namespace anidamage
