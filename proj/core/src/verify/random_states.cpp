// SPDX-License-Identifier: Apache-2.0

#include "anidamage/verify/random_states.hpp"

#include <cmath>
#include <numbers>

namespace anidamage {
namespace verify {

FullTensor2 random_rotation(std::mt19937_64& rng) {
  // uniform unit quaternion (Shoemake)
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double u1 = u(rng), u2 = u(rng), u3 = u(rng);
  const double two_pi = 2.0 * std::numbers::pi;
  const double a = std::sqrt(1.0 - u1), b = std::sqrt(u1);
  const double qx = a * std::sin(two_pi * u2);
  const double qy = a * std::cos(two_pi * u2);
  const double qz = b * std::sin(two_pi * u3);
  const double qw = b * std::cos(two_pi * u3);
  FullTensor2 q;
  q(0, 0) = 1 - 2 * (qy * qy + qz * qz);
  q(0, 1) = 2 * (qx * qy - qz * qw);
  q(0, 2) = 2 * (qx * qz + qy * qw);
  q(1, 0) = 2 * (qx * qy + qz * qw);
  q(1, 1) = 1 - 2 * (qx * qx + qz * qz);
  q(1, 2) = 2 * (qy * qz - qx * qw);
  q(2, 0) = 2 * (qx * qz - qy * qw);
  q(2, 1) = 2 * (qy * qz + qx * qw);
  q(2, 2) = 1 - 2 * (qx * qx + qy * qy);
  return q;
}

FullTensor2 random_deformation_gradient(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (;;) {
    FullTensor2 f = FullTensor2::identity();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) f(i, j) += 0.5 * u(rng);
    if (det(f) >= 0.3) return f;
  }
}

SymTensor2 random_admissible_C(std::mt19937_64& rng) {
  return right_cauchy_green(random_deformation_gradient(rng));
}

SymTensor2 random_damage(std::mt19937_64& rng, double max_eig) {
  std::uniform_real_distribution<double> u(0.0, max_eig);
  const FullTensor2 q = random_rotation(rng);
  const double d0 = u(rng), d1 = u(rng), d2 = u(rng);
  SymTensor2 d;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j)
      d.at(i, j) = d0 * q(i, 0) * q(j, 0) + d1 * q(i, 1) * q(j, 1) +
                   d2 * q(i, 2) * q(j, 2);
  return d;
}

SymTensor2 random_symmetric(std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  return {u(rng), u(rng), u(rng), u(rng), u(rng), u(rng)};
}

SymTensor2 random_psd(std::mt19937_64& rng, double max_eig) {
  return random_damage(rng, max_eig);
}

}  // namespace verify
}  // namespace anidamage
