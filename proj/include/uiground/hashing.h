// Copyright 2026 The uiground Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef UIGROUND_HASHING_H_
#define UIGROUND_HASHING_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace uiground {

// 64-bit FNV-1a. Stable across platforms, unlike std::hash.
std::uint64_t Fnv1a64(std::string_view data);

// Derives an independent sub-seed for a named stage so re-running one
// stage never perturbs another.
std::uint64_t DeriveSeed(std::uint64_t seed, std::string_view stage);

std::string Sha256Hex(std::string_view data);

// Portable random source: mt19937_64 is fully specified by the standard,
// the distributions are not, so bounded draws are done here by rejection.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, bound). bound must be > 0.
  std::uint64_t Below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

// Fisher-Yates permutation of [0, n).
std::vector<std::size_t> ShuffledIndices(std::size_t n, std::uint64_t seed);

template <typename T>
void DeterministicShuffle(std::vector<T>& items, std::uint64_t seed) {
  Rng rng(seed);
  for (std::size_t i = items.size(); i > 1; --i) {
    std::swap(items[i - 1], items[rng.Below(i)]);
  }
}

}  // namespace uiground

#endif  // UIGROUND_HASHING_H_
