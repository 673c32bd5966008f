// SPDX-License-Identifier: Apache-2.0
//
// Deterministic generator of admissible random states: C = F^T F with
// F = I + 0.5 R (entries uniform in [-1,1], rejected while det F < 0.3) and
// D = Q diag(u) Q^T with eigenvalues uniform in [0, max_eig] and Q a random
// rotation. Per-index engines keep parallel sweeps reproducible.
#pragma once

#include <cstdint>
#include <random>

#include "anidamage/tensor.hpp"

namespace anidamage {
namespace verify {

// SplitMix64 scramble so that sample i is independent of how work is split
// across threads.
inline std::mt19937_64 engine_for(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  z ^= z >> 31;
  return std::mt19937_64(z);
}

FullTensor2 random_rotation(std::mt19937_64& rng);
FullTensor2 random_deformation_gradient(std::mt19937_64& rng);  // det >= 0.3
SymTensor2 random_admissible_C(std::mt19937_64& rng);
SymTensor2 random_damage(std::mt19937_64& rng, double max_eig = 0.95);
SymTensor2 random_symmetric(std::mt19937_64& rng, double scale = 1.0);
SymTensor2 random_psd(std::mt19937_64& rng, double max_eig = 1.0);

}  // namespace verify
}  // namespace anidamage
