// Copyright 2026 The invskill Authors
//
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

#ifndef INVSKILL_RNG_H_
#define INVSKILL_RNG_H_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>
#include <vector>

namespace invskill {

// Seeded random source. Wraps std::mt19937_64 (whose output sequence is fixed
// by the standard) and derives every distribution from raw 64-bit draws, so
// streams are identical across standard library implementations.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t NextU64() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double Uniform();

  // Uniform in [lo, hi).
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }

  // Uniform integer in [lo, hi], inclusive, unbiased.
  int64_t UniformInt(int64_t lo, int64_t hi);

  // `count` distinct indices from [0, n), uniformly without replacement, in
  // draw order.
  std::vector<size_t> SampleWithoutReplacement(size_t n, size_t count);

  // Uniformly random permutation of [0, n).
  std::vector<size_t> Permutation(size_t n);

 private:
  std::mt19937_64 engine_;
};

uint64_t SplitMix64(uint64_t x);

// Seed for an independent sub-stream: SplitMix64 chained over the master
// seed, the FNV-1a hash of `label`, and each index in turn.
uint64_t DeriveSeed(uint64_t master, std::string_view label,
                    std::initializer_list<uint64_t> indices = {});

}  // namespace invskill

#endif  // INVSKILL_RNG_H_
