// Copyright 2026 The HOSL Authors.
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

#ifndef HOSL_RNG_HPP_
#define HOSL_RNG_HPP_

#include <cstdint>

namespace hosl {

// Independent sub-seed per pipeline stage (splitmix64 finalizer), so the
// split, attack, and training streams never alias.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace seed_stream {
inline constexpr std::uint64_t kDataset = 0;
inline constexpr std::uint64_t kSplit = 1;
inline constexpr std::uint64_t kAttack = 2;
inline constexpr std::uint64_t kTrain = 3;
inline constexpr std::uint64_t kLearner = 4;
}  // namespace seed_stream

}  // namespace hosl

#endif  // HOSL_RNG_HPP_
