// Copyright 2026 The vqec authors
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

#ifndef VQEC_RNG_HPP
#define VQEC_RNG_HPP

#include <cstdint>

namespace vqec {

// SplitMix64 (Steele, Lea, Flood); the output sequence of a given state is
// fixed by the algorithm, so seeds reproduce across platforms and standard
// library versions.  Used both for drawing initial angles inside one run and
// for deriving independent per-run seeds from a master seed.
struct SplitMix64 {
  std::uint64_t state = 0;

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform double in [0, 1) with 53 random mantissa bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

// The i-th derived seed of a master seed: the i-th output of the stream.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  SplitMix64 rng{master};
  std::uint64_t out = 0;
  for (std::uint64_t i = 0; i <= index; ++i) out = rng.next();
  return out;
}

}  // namespace vqec

#endif  // VQEC_RNG_HPP
