// SPDX-License-Identifier: Apache-2.0

#include "anidamage/scenario/study.hpp"

#include <fstream>
#include <nlohmann/json.hpp>

namespace anidamage {
namespace scenario {

using nlohmann::json;

bool is_single_element_scenario(const std::string& id) {
  return id == "single-element-tension" || id == "single-element-uniaxial-strain" ||
         id == "single-element-simple-shear" || id == "single-element-torsion";
}

StudyConfig preset_single_element(const std::string& kind, double k_ani) {
  const std::string id = "single-element-" + kind;
  if (!is_single_element_scenario(id))
    throw ConfigError("unknown single-element mode '" + kind + "'");
  StudyConfig cfg;
  cfg.scenario = id;
  cfg.material_preset = "set1";
  cfg.material_overrides["k_ani"] = k_ani;
  cfg.model.kind = MicromorphicModel::C;
  cfg.model.local = true;  // homogeneous studies use the local formulation
  cfg.mesh.source = "unit-cube";
  cfg.load.total_time = 1.0;
  if (kind == "torsion") {
    cfg.load.twist_max = 1.2;
    cfg.load.phases = {{0.15, 8}, {1.0, 110}};
  } else if (kind == "simple-shear") {
    cfg.load.u_max = 1.2;
    cfg.load.phases = {{0.15, 8}, {1.0, 110}};
  } else {
    cfg.load.u_max = 1.0;
    cfg.load.phases = {{0.15, 8}, {1.0, 110}};
  }
  cfg.output.dir = "out/" + id;
  cfg.reaction_set = "top";
  cfg.reaction_comp = 2;
  return cfg;
}

StudyConfig preset_notched(const std::string& mesh_level, MicromorphicModel model) {
  StudyConfig cfg;
  cfg.scenario = "notched";
  cfg.material_preset = "set2";
  cfg.model.kind = model;
  cfg.mesh.source = "notched-" + mesh_level;
  cfg.load.u_max = 1.0;
  cfg.load.total_time = 1.0;
  cfg.load.phases = {{0.2, 10}, {1.0, 130}};
  cfg.output.dir = "out/notched-" + std::string(to_string(model)) + "-" + mesh_level;
  cfg.reaction_set = "top";
  cfg.reaction_comp = 1;
  return cfg;
}

void apply_material_override(MaterialParams& p, const std::string& name, double value) {
  if (name == "k_ani") p.k_ani = value;
  else if (name == "e_d") p.e_d = value;
  else if (name == "f_d") p.f_d = value;
  else if (name == "Y0") p.Y0 = value;
  else if (name == "c_d") p.c_d = value;
  else if (name == "H_d") p.H_d = value;
  else if (name == "r_d") p.r_d = value;
  else if (name == "s_d") p.s_d = value;
  else if (name == "K_h") p.K_h = value;
  else if (name == "n_h") p.n_h = value;
  else if (name == "a_h") p.a_h = value;
  else if (name == "eta_v") p.eta_v = value;
  else if (name == "lambda") { p.elastic.lambda = value; p.attach_neo_hooke(); }
  else if (name == "mu") { p.elastic.mu = value; p.attach_neo_hooke(); }
  else if (name == "H_micro") std::fill(p.H_micro.begin(), p.H_micro.end(), value);
  else if (name == "A_micro") std::fill(p.A_micro.begin(), p.A_micro.end(), value);
  else throw ConfigError("unknown material override '" + name + "'");
}

MaterialParams build_material(const StudyConfig& cfg) {
  MaterialParams p;
  if (cfg.material_preset == "set1") p = MaterialParams::set1(cfg.model.kind);
  else if (cfg.material_preset == "set2") p = MaterialParams::set2(cfg.model.kind);
  else throw ConfigError("unknown material preset '" + cfg.material_preset + "'");

  for (const auto& [name, value] : cfg.material_overrides)
    apply_material_override(p, name, value);

  const size_t n = static_cast<size_t>(tuple_size(cfg.model.kind));
  if (cfg.model.H_value) std::fill(p.H_micro.begin(), p.H_micro.end(), *cfg.model.H_value);
  if (cfg.model.A_value) std::fill(p.A_micro.begin(), p.A_micro.end(), *cfg.model.A_value);
  if (!cfg.model.active.empty()) {
    if (cfg.model.active.size() != n)
      throw ConfigError("model.active mask must have length " + std::to_string(n));
    for (size_t i = 0; i < n; ++i)
      if (!cfg.model.active[i]) {
        p.H_micro[i] = 0.0;
        p.A_micro[i] = 0.0;
      }
  }
  if (cfg.model.local) {
    std::fill(p.H_micro.begin(), p.H_micro.end(), 0.0);
    std::fill(p.A_micro.begin(), p.A_micro.end(), 0.0);
  }
  p.validate(cfg.model.kind);
  return p;
}

// --- JSON --------------------------------------------------------------------

namespace {

void parse_model(const json& j, ModelSpec& m) {
  if (j.contains("kind"))
    m.kind = micromorphic_model_from_string(j.at("kind").get<std::string>());
  if (j.contains("active")) m.active = j.at("active").get<std::vector<bool>>();
  if (j.contains("local")) m.local = j.at("local").get<bool>();
  if (j.contains("H")) m.H_value = j.at("H").get<double>();
  if (j.contains("A")) m.A_value = j.at("A").get<double>();
}

}  // namespace

StudyConfig parse_study_config_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  StudyConfig cfg;
  try {
    if (j.contains("scenario")) cfg.scenario = j.at("scenario").get<std::string>();
    if (j.contains("material")) {
      const auto& jm = j.at("material");
      if (jm.contains("preset")) cfg.material_preset = jm.at("preset").get<std::string>();
      if (jm.contains("overrides"))
        for (const auto& [k, v] : jm.at("overrides").items())
          cfg.material_overrides[k] = v.get<double>();
    }
    if (j.contains("model")) parse_model(j.at("model"), cfg.model);
    if (j.contains("mesh")) {
      const auto& jm = j.at("mesh");
      if (jm.contains("source")) cfg.mesh.source = jm.at("source").get<std::string>();
      if (jm.contains("file")) cfg.mesh.file = jm.at("file").get<std::string>();
      if (jm.contains("nx")) cfg.mesh.nx = jm.at("nx").get<int>();
      if (jm.contains("ny")) cfg.mesh.ny = jm.at("ny").get<int>();
    }
    if (j.contains("load")) {
      const auto& jl = j.at("load");
      if (jl.contains("u_max")) cfg.load.u_max = jl.at("u_max").get<double>();
      if (jl.contains("twist_max")) cfg.load.twist_max = jl.at("twist_max").get<double>();
      if (jl.contains("pressure_max")) cfg.load.pressure_max = jl.at("pressure_max").get<double>();
      if (jl.contains("total_time")) cfg.load.total_time = jl.at("total_time").get<double>();
      if (jl.contains("max_cutbacks")) cfg.load.max_cutbacks = jl.at("max_cutbacks").get<int>();
      if (jl.contains("phases")) {
        cfg.load.phases.clear();
        for (const auto& jp : jl.at("phases"))
          cfg.load.phases.push_back({jp.at("to").get<double>(), jp.at("steps").get<int>()});
      }
    }
    if (j.contains("solver")) {
      const auto& js = j.at("solver");
      if (js.contains("rel_tol")) cfg.solver.rel_tol = js.at("rel_tol").get<double>();
      if (js.contains("abs_tol")) cfg.solver.abs_tol = js.at("abs_tol").get<double>();
      if (js.contains("max_iterations")) cfg.solver.max_iterations = js.at("max_iterations").get<int>();
      if (js.contains("threads")) cfg.solver.threads = js.at("threads").get<int>();
      if (js.contains("tangent")) cfg.solver.tangent = js.at("tangent").get<std::string>();
    }
    if (j.contains("output")) {
      const auto& jo = j.at("output");
      if (jo.contains("dir")) cfg.output.dir = jo.at("dir").get<std::string>();
      if (jo.contains("fields_every")) cfg.output.fields_every = jo.at("fields_every").get<int>();
    }
    if (j.contains("bcs")) {
      for (const auto& jb : j.at("bcs")) {
        DirichletSpec bc;
        bc.node_set = jb.at("node_set").get<std::string>();
        bc.dofs = jb.at("dofs").get<std::string>();
        if (jb.contains("amplitude")) bc.amplitude = jb.at("amplitude").get<double>();
        cfg.bcs.push_back(bc);
      }
    }
    if (j.contains("pressure_face_set"))
      cfg.pressure_face_set = j.at("pressure_face_set").get<std::string>();
    if (j.contains("reaction_set")) cfg.reaction_set = j.at("reaction_set").get<std::string>();
    if (j.contains("reaction_comp")) cfg.reaction_comp = j.at("reaction_comp").get<int>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config field error: ") + e.what());
  }
  return cfg;
}

StudyConfig load_study_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_study_config_json(text);
}

std::string study_config_to_json(const StudyConfig& cfg) {
  json j;
  j["scenario"] = cfg.scenario;
  j["material"]["preset"] = cfg.material_preset;
  if (!cfg.material_overrides.empty()) {
    json jo;
    for (const auto& [k, v] : cfg.material_overrides) jo[k] = v;
    j["material"]["overrides"] = jo;
  }
  j["model"]["kind"] = to_string(cfg.model.kind);
  if (!cfg.model.active.empty()) j["model"]["active"] = cfg.model.active;
  j["model"]["local"] = cfg.model.local;
  if (cfg.model.H_value) j["model"]["H"] = *cfg.model.H_value;
  if (cfg.model.A_value) j["model"]["A"] = *cfg.model.A_value;
  j["mesh"]["source"] = cfg.mesh.source;
  if (!cfg.mesh.file.empty()) j["mesh"]["file"] = cfg.mesh.file;
  if (cfg.mesh.nx > 0) j["mesh"]["nx"] = cfg.mesh.nx;
  if (cfg.mesh.ny > 0) j["mesh"]["ny"] = cfg.mesh.ny;
  j["load"]["u_max"] = cfg.load.u_max;
  j["load"]["twist_max"] = cfg.load.twist_max;
  if (cfg.load.pressure_max != 0.0) j["load"]["pressure_max"] = cfg.load.pressure_max;
  j["load"]["total_time"] = cfg.load.total_time;
  j["load"]["max_cutbacks"] = cfg.load.max_cutbacks;
  json phases = json::array();
  for (const auto& ph : cfg.load.phases) phases.push_back({{"to", ph.to}, {"steps", ph.steps}});
  j["load"]["phases"] = phases;
  j["solver"]["rel_tol"] = cfg.solver.rel_tol;
  j["solver"]["abs_tol"] = cfg.solver.abs_tol;
  j["solver"]["max_iterations"] = cfg.solver.max_iterations;
  j["solver"]["threads"] = cfg.solver.threads;
  j["solver"]["tangent"] = cfg.solver.tangent;
  j["output"]["dir"] = cfg.output.dir;
  j["output"]["fields_every"] = cfg.output.fields_every;
  if (!cfg.bcs.empty()) {
    json jb = json::array();
    for (const auto& bc : cfg.bcs)
      jb.push_back({{"node_set", bc.node_set}, {"dofs", bc.dofs}, {"amplitude", bc.amplitude}});
    j["bcs"] = jb;
  }
  if (!cfg.pressure_face_set.empty()) j["pressure_face_set"] = cfg.pressure_face_set;
  j["reaction_set"] = cfg.reaction_set;
  j["reaction_comp"] = cfg.reaction_comp;
  return j.dump(2) + "\n";
}

}  // namespace scenario
}  // namespace anidamage
