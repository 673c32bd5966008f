// SPDX-License-Identifier: Apache-2.0
//
// Result emission: curve CSV, legacy-ASCII VTK unstructured-grid fields and
// the per-step solve report. Column meanings are documented in
// docs/formats.md.
#pragma once

#include <filesystem>
#include <vector>

#include "anidamage/fem/newton.hpp"

namespace anidamage {
namespace scenario {

struct CurveRecord {
  int step = 0;
  double time = 0.0;
  double load_factor = 0.0;
  double probe = 0.0;     // displacement (mm) or twist (rad)
  double reaction = 0.0;  // force (N) or moment (N mm)
  int newton_iters = 0;
  int cutbacks = 0;
};

// Writes step,time,load_factor,probe,reaction,reaction_normalized,
// newton_iterations,cutbacks; normalization divides by the peak |reaction|
// of the run (columns stay finite for an all-zero run).
void write_curve_csv(const std::filesystem::path& path,
                     const std::vector<CurveRecord>& records);

double peak_abs_reaction(const std::vector<CurveRecord>& records);

// Trapezoidal integral of reaction over probe (dissipated work measure for
// curve comparisons).
double curve_integral(const std::vector<CurveRecord>& records);

// Legacy ASCII VTK unstructured grid: point data = displacement vector and
// the nonlocal fields, cell data = element-averaged damage components and
// hardening.
void write_vtk(const std::filesystem::path& path, const fem::CoupledSystem& system,
               const std::string& title);

void write_solve_report(const std::filesystem::path& path, const fem::SolveReport& report);

}  // namespace scenario
}  // namespace anidamage
