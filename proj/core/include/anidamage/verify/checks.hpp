// SPDX-License-Identifier: Apache-2.0
//
// Property suites turning the model's structural guarantees into executable
// checks: the damage growth criterion, the isochoric-split counterexample,
// the boundary behavior of the anisotropic degradation derivative, and
// finite-difference consistency of every analytic derivative.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "anidamage/damage_point.hpp"

namespace anidamage {
namespace verify {

struct CheckResult {
  std::string name;
  int samples = 0;
  std::uint64_t seed = 0;
  double worst = 0.0;       // worst-case violation measure (<= 0 passes, see detail)
  double threshold = 0.0;
  bool pass = false;
  std::string detail;       // offending sample for replay, or summary
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

CheckResult check_damage_growth(int samples, std::uint64_t seed, int threads = 1);
CheckResult check_isochoric_violation();
CheckResult check_boundary_derivatives(int samples, std::uint64_t seed, int threads = 1);
CheckResult check_fd_consistency(int samples, std::uint64_t seed, int threads = 1);

VerifyReport run_all_checks(int samples, std::uint64_t seed, int threads = 1);
void print_report(std::ostream& os, const VerifyReport& report);

// Closed form of the positive eigenvalue in the isochoric counterexample:
// -(mu/2)((lambda2/lambda1)^(2/3) - 1).
double isochoric_counterexample_eigenvalue(double lambda1, double lambda2, double mu);

}  // namespace verify
}  // namespace anidamage
