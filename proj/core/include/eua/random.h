// Copyright 2026 The EUA Solver Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Platform-independent randomness. The engine is std::mt19937_64, whose
// output sequence is fixed by the C++ standard; every derived quantity
// (uniform reals, bounded integers, normals, shuffles) is computed here
// rather than through the implementation-defined <random> distributions.

#ifndef EUA_RANDOM_H_
#define EUA_RANDOM_H_

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace eua {

struct RandomSeed {
  uint64_t value = 0;
  friend bool operator==(RandomSeed, RandomSeed) = default;
};

// SplitMix64 finalizer.
uint64_t Mix64(uint64_t x);

// Deterministic seed derivation: combines `base` with `salt` so that
// distinct salts give statistically independent streams.
RandomSeed DeriveSeed(RandomSeed base, uint64_t salt);

class Rng {
 public:
  explicit Rng(RandomSeed seed) : engine_(seed.value) {}

  uint64_t NextU64() { return engine_(); }
  // Uniform in [0, 1) with 53 random bits.
  double UniformUnit();
  // Uniform in [lo, hi].
  double Uniform(double lo, double hi);
  // Uniform integer in [0, bound); bound > 0. Unbiased (rejection).
  uint64_t UniformIndex(uint64_t bound);
  // Standard normal via the Marsaglia polar method.
  double StandardNormal();

  // Fisher-Yates shuffle.
  template <typename T>
  void Shuffle(std::span<T> items) {
    for (size_t i = items.size(); i > 1; --i) {
      const size_t j = static_cast<size_t>(UniformIndex(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
  bool has_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

}  // namespace eua

#endif  // EUA_RANDOM_H_
