// SPDX-License-Identifier: Apache-2.0
//
// Builds a coupled system from a study configuration, runs the load program
// and emits curve/fields/echo/report artifacts into the output directory.
#pragma once

#include <memory>

#include "anidamage/scenario/outputs.hpp"
#include "anidamage/scenario/study.hpp"

namespace anidamage {
namespace scenario {

struct RunOptions {
  std::string out_dir_override;  // empty: use config
  int threads_override = 0;      // 0: use config
  bool write_outputs = true;
};

struct RunResult {
  StudyConfig config;  // effective configuration (what the echo contains)
  std::vector<CurveRecord> curve;
  fem::SolveReport report;
  std::shared_ptr<fem::CoupledSystem> system;  // final state

  double peak_reaction() const { return peak_abs_reaction(curve); }
  double dissipated_integral() const { return curve_integral(curve); }
};

// Constructs the system (mesh, material, boundary conditions, probes) for a
// configuration without running it.
std::shared_ptr<fem::CoupledSystem> build_system(const StudyConfig& cfg);

RunResult run_study(const StudyConfig& cfg, const RunOptions& opts = {});

}  // namespace scenario
}  // namespace anidamage
