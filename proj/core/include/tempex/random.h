// Copyright 2026 The tempex Authors.
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


// Deterministic permutations for sentence shuffling.
//
// The generator is std::mt19937_64 seeded with the 64-bit seed through its
// single-value constructor; its output sequence is fixed by the C++
// standard. A permutation of n items starts from the identity and runs
// Fisher-Yates from the back: for i = n-1 down to 1, draw j uniformly from
// [0, i] and swap items i and j. A uniform draw below `bound` takes raw
// 64-bit outputs x, rejects those with x < (2^64 mod bound), and returns
// x mod bound.

#ifndef TEMPEX_RANDOM_H_
#define TEMPEX_RANDOM_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace tempex {

uint64_t UniformBelow(std::mt19937_64& rng, uint64_t bound);

// Indices 0..n-1 permuted as described above.
std::vector<size_t> PermutationIndices(size_t n, uint64_t seed);

template <typename T>
std::vector<T> Permute(const std::vector<T>& items,
                       const std::vector<size_t>& order) {
  std::vector<T> out;
  out.reserve(order.size());
  for (size_t i : order) out.push_back(items[i]);
  return out;
}

}  // namespace tempex

#endif  // TEMPEX_RANDOM_H_
