// SPDX-License-Identifier: Apache-2.0
//
// Command-line entry point: run a study config, execute the verification
// suites, sweep a parameter over variants, or emit a preset config.
// Exit codes: 0 ok, 1 run/check failure, 2 usage or config error.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>

#include "anidamage/scenario/runner.hpp"
#include "anidamage/verify/checks.hpp"

namespace fs = std::filesystem;
using namespace anidamage;

namespace {

void print_error_block(const std::string& type, const std::string& message) {
  nlohmann::json j;
  j["error"]["type"] = type;
  j["error"]["message"] = message;
  std::cerr << j.dump(2) << std::endl;
}

int cmd_run(const std::string& config_path, const std::string& out_dir, int threads) {
  const scenario::StudyConfig cfg = scenario::load_study_config(config_path);
  scenario::RunOptions opts;
  opts.out_dir_override = out_dir;
  opts.threads_override = threads;
  const scenario::RunResult result = scenario::run_study(cfg, opts);
  std::cout << "steps=" << result.curve.size()
            << " peak_reaction=" << result.peak_reaction()
            << " out=" << result.config.output.dir << std::endl;
  if (!result.report.ok) {
    print_error_block("StepFailed", result.report.message);
    return 1;
  }
  return 0;
}

int cmd_verify(int samples, std::uint64_t seed, const std::string& out_dir, int threads) {
  const verify::VerifyReport report = verify::run_all_checks(samples, seed, threads);
  verify::print_report(std::cout, report);
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    std::ofstream f(fs::path(out_dir) / "verify_report.txt");
    verify::print_report(f, report);
  }
  if (!report.all_pass()) {
    print_error_block("CheckFailed", "one or more verification checks failed");
    return 1;
  }
  return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& param,
              const std::string& out_dir, int threads) {
  const auto eq = param.find('=');
  if (eq == std::string::npos)
    throw ConfigError("--param expects name=v1,v2,... got '" + param + "'");
  const std::string name = param.substr(0, eq);
  std::vector<double> values;
  std::stringstream ss(param.substr(eq + 1));
  std::string tok;
  while (std::getline(ss, tok, ',')) values.push_back(std::stod(tok));
  if (values.empty()) throw ConfigError("--param has no values");

  const scenario::StudyConfig base = scenario::load_study_config(config_path);
  const std::string root = out_dir.empty() ? base.output.dir + "-sweep" : out_dir;

  std::vector<double> peaks;
  for (size_t i = 0; i < values.size(); ++i) {
    scenario::StudyConfig cfg = base;
    cfg.material_overrides[name] = values[i];
    std::ostringstream sub;
    sub << root << "/" << name << "I" << i;
    scenario::RunOptions opts;
    opts.out_dir_override = sub.str();
    opts.threads_override = threads;
    const scenario::RunResult r = scenario::run_study(cfg, opts);
    peaks.push_back(r.peak_reaction());
    std::cout << name << "=" << values[i] << " peak=" << r.peak_reaction()
              << " ok=" << (r.report.ok ? "true" : "false") << std::endl;
    if (!r.report.ok) {
      print_error_block("StepFailed", r.report.message);
      return 1;
    }
  }
  std::ofstream summary(fs::path(root) / "sweep_summary.csv");
  summary << name << ",peak_reaction\n";
  summary.precision(17);
  for (size_t i = 0; i < values.size(); ++i)
    summary << values[i] << "," << peaks[i] << "\n";
  return 0;
}

int cmd_preset(const std::string& name, const std::string& output) {
  scenario::StudyConfig cfg;
  if (name.rfind("single-element-", 0) == 0) {
    cfg = scenario::preset_single_element(name.substr(15), 1.0);
  } else if (name.rfind("notched-", 0) == 0) {
    // notched-<model>-<level>, e.g. notched-C-coarse
    const std::string rest = name.substr(8);
    const auto dash = rest.find('-');
    if (dash == std::string::npos)
      throw ConfigError("expected notched-<model>-<level>, got '" + name + "'");
    cfg = scenario::preset_notched(rest.substr(dash + 1),
                                   micromorphic_model_from_string(rest.substr(0, dash)));
  } else {
    throw ConfigError("unknown preset '" + name + "'");
  }
  const std::string text = scenario::study_config_to_json(cfg);
  if (output.empty() || output == "-") {
    std::cout << text;
  } else {
    std::ofstream f(output);
    if (!f) throw IoError("cannot write " + output);
    f << text;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-strain anisotropic damage simulator"};
  app.require_subcommand(1);

  std::string config_path, out_dir, param, preset_name, preset_out;
  int threads = 0;
  int samples = 10000;
  std::uint64_t seed = 42;

  auto* run = app.add_subcommand("run", "run a study configuration");
  run->add_option("config", config_path, "study config (JSON)")->required();
  run->add_option("--out", out_dir, "output directory override");
  run->add_option("--threads", threads, "worker threads (0 = hardware)");

  auto* verify_cmd = app.add_subcommand("verify", "run the verification suites");
  verify_cmd->add_option("--samples", samples, "sample count (default 10000)");
  verify_cmd->add_option("--seed", seed, "random seed (default 42)");
  verify_cmd->add_option("--out", out_dir, "also write the report here");
  verify_cmd->add_option("--threads", threads, "worker threads");

  auto* sweep = app.add_subcommand("sweep", "fan a config out over parameter values");
  sweep->add_option("config", config_path, "study config (JSON)")->required();
  sweep->add_option("--param", param, "name=v1,v2,... (material override)")->required();
  sweep->add_option("--out", out_dir, "output root directory");
  sweep->add_option("--threads", threads, "worker threads");

  auto* preset = app.add_subcommand("preset", "emit a bundled study config");
  preset->add_option("name", preset_name,
                     "single-element-{tension,uniaxial-strain,simple-shear,torsion} "
                     "or notched-<A|B|C>-<coarse|medium|fine>")->required();
  preset->add_option("-o,--output", preset_out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (run->parsed()) return cmd_run(config_path, out_dir, threads);
    if (verify_cmd->parsed()) return cmd_verify(samples, seed, out_dir, threads);
    if (sweep->parsed()) return cmd_sweep(config_path, param, out_dir, threads);
    if (preset->parsed()) return cmd_preset(preset_name, preset_out);
  } catch (const ConfigError& e) {
    print_error_block("ConfigError", e.what());
    return 2;
  } catch (const IoError& e) {
    print_error_block("IoError", e.what());
    return 2;
  } catch (const Error& e) {
    print_error_block("Error", e.what());
    return 1;
  } catch (const std::exception& e) {
    print_error_block("Unexpected", e.what());
    return 1;
  }
  return 2;
}
