// SPDX-License-Identifier: Apache-2.0

#include "anidamage/scenario/outputs.hpp"

#include <cmath>
#include <fstream>

namespace anidamage {
namespace scenario {

double peak_abs_reaction(const std::vector<CurveRecord>& records) {
  double peak = 0.0;
  for (const auto& r : records) peak = std::max(peak, std::abs(r.reaction));
  return peak;
}

double curve_integral(const std::vector<CurveRecord>& records) {
  double w = 0.0;
  for (size_t i = 1; i < records.size(); ++i)
    w += 0.5 * (records[i].reaction + records[i - 1].reaction) *
         (records[i].probe - records[i - 1].probe);
  return w;
}

void write_curve_csv(const std::filesystem::path& path,
                     const std::vector<CurveRecord>& records) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write curve file " + path.string());
  out << "step,time,load_factor,probe,reaction,reaction_normalized,"
         "newton_iterations,cutbacks\n";
  const double peak = peak_abs_reaction(records);
  const double scale = peak > 0.0 ? 1.0 / peak : 0.0;
  out.precision(17);
  for (const auto& r : records) {
    out << r.step << ',' << r.time << ',' << r.load_factor << ',' << r.probe
        << ',' << r.reaction << ',' << r.reaction * scale << ','
        << r.newton_iters << ',' << r.cutbacks << '\n';
  }
  if (!out) throw IoError("write failed for " + path.string());
}

void write_vtk(const std::filesystem::path& path, const fem::CoupledSystem& system,
               const std::string& title) {
  const fem::Mesh& mesh = system.mesh();
  const int n_dbar = tuple_size(system.kind());
  std::ofstream out(path);
  if (!out) throw IoError("cannot write VTK file " + path.string());
  out.precision(12);
  out << "# vtk DataFile Version 3.0\n" << title << "\nASCII\n";
  out << "DATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << mesh.n_nodes() << " double\n";
  for (const auto& x : mesh.nodes) out << x[0] << " " << x[1] << " " << x[2] << "\n";
  out << "CELLS " << mesh.n_elements() << " " << 9 * mesh.n_elements() << "\n";
  for (const auto& e : mesh.elements) {
    out << "8";
    for (int a = 0; a < 8; ++a) out << " " << e[static_cast<size_t>(a)];
    out << "\n";
  }
  out << "CELL_TYPES " << mesh.n_elements() << "\n";
  for (int e = 0; e < mesh.n_elements(); ++e) out << "12\n";

  out << "POINT_DATA " << mesh.n_nodes() << "\n";
  out << "VECTORS displacement double\n";
  for (int a = 0; a < mesh.n_nodes(); ++a)
    out << system.nodal_value(a, 0) << " " << system.nodal_value(a, 1) << " "
        << system.nodal_value(a, 2) << "\n";
  for (int k = 0; k < n_dbar; ++k) {
    out << "SCALARS dbar_" << (k + 1) << " double 1\nLOOKUP_TABLE default\n";
    for (int a = 0; a < mesh.n_nodes(); ++a) out << system.nodal_value(a, 3 + k) << "\n";
  }

  const auto damage = system.element_damage_average();
  static const char* comp_names[6] = {"D_xx", "D_yy", "D_zz", "D_xy", "D_xz", "D_yz"};
  out << "CELL_DATA " << mesh.n_elements() << "\n";
  for (int k = 0; k < 6; ++k) {
    out << "SCALARS " << comp_names[k] << " double 1\nLOOKUP_TABLE default\n";
    for (const auto& d : damage) out << d[k] << "\n";
  }
  out << "SCALARS xi_d double 1\nLOOKUP_TABLE default\n";
  const auto& states = system.states();
  for (size_t e = 0; e < static_cast<size_t>(mesh.n_elements()); ++e) {
    double xi = 0.0;
    for (int q = 0; q < 8; ++q) xi += states[8 * e + static_cast<size_t>(q)].xi_d;
    out << 0.125 * xi << "\n";
  }
  if (!out) throw IoError("write failed for " + path.string());
}

void write_solve_report(const std::filesystem::path& path, const fem::SolveReport& report) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write solve report " + path.string());
  out << "step,load_factor,time,dt,iterations,cutbacks,residual0,residual,"
         "ext_work,stored_energy,dissipation_min,dgamma_max,damage_eig_max\n";
  out.precision(17);
  for (const auto& s : report.steps) {
    out << s.step << ',' << s.t << ',' << s.time << ',' << s.dt << ','
        << s.iterations << ',' << s.cutbacks << ',' << s.residual0 << ','
        << s.residual << ',' << s.ext_work << ',' << s.stored_energy << ','
        << s.stats.point_dissipation_min << ',' << s.stats.dgamma_max << ','
        << s.stats.damage_eig_max << '\n';
  }
  out << "# ok=" << (report.ok ? "true" : "false");
  if (!report.message.empty()) out << " message=" << report.message;
  out << "\n";
}

}  // namespace scenario
}  // namespace anidamage
