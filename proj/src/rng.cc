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

#include "invskill/rng.h"

#include <numeric>
#include <stdexcept>
#include <utility>

namespace invskill {

double Rng::Uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

int64_t Rng::UniformInt(int64_t lo, int64_t hi) {
  if (hi < lo) throw std::invalid_argument("UniformInt: empty range");
  const uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<int64_t>(engine_());  // full 64-bit range
  // Reject the top partial bucket.
  const uint64_t limit = UINT64_MAX - (UINT64_MAX % span);
  uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return lo + static_cast<int64_t>(x % span);
}

std::vector<size_t> Rng::SampleWithoutReplacement(size_t n, size_t count) {
  if (count > n) throw std::invalid_argument("sample larger than population");
  std::vector<size_t> pool(n);
  std::iota(pool.begin(), pool.end(), size_t{0});
  // Partial Fisher-Yates.
  for (size_t i = 0; i < count; ++i) {
    const auto j = static_cast<size_t>(
        UniformInt(static_cast<int64_t>(i), static_cast<int64_t>(n - 1)));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(count);
  return pool;
}

std::vector<size_t> Rng::Permutation(size_t n) {
  return SampleWithoutReplacement(n, n);
}

uint64_t SplitMix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

uint64_t DeriveSeed(uint64_t master, std::string_view label,
                    std::initializer_list<uint64_t> indices) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : label) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  uint64_t s = SplitMix64(master ^ SplitMix64(h));
  for (uint64_t index : indices) s = SplitMix64(s ^ SplitMix64(index + 1));
  return s;
}

}  // namespace invskill
