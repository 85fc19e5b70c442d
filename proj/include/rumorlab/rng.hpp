// Copyright 2026 the rumorlab authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RUMORLAB_RNG_HPP_
#define RUMORLAB_RNG_HPP_

#include <bit>
#include <cstdint>

namespace rumorlab {

// Splittable counter-based generator in the SplitMix64 family: each stream is
// a Weyl sequence with its own odd increment, finalized through a 64-bit
// mixer (Stafford variant 13).  Streams derived from distinct (seed, stream)
// pairs are statistically independent, so Monte Carlo replicas can run in any
// order or thread layout and still reproduce bit-identical draws.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed)
      : state_(seed), gamma_(kGoldenGamma) {}

  SplitMix64(std::uint64_t seed, std::uint64_t stream)
      : state_(mix64(seed + kGoldenGamma * (stream + 1))),
        gamma_(mix_gamma(seed ^ mix64(stream + kGoldenGamma))) {}

  std::uint64_t next_u64() {
    state_ += gamma_;
    return mix64(state_);
  }

  // Uniform on [0, 1), 53-bit resolution.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform on (0, 1]; safe as an argument to log().
  double next_open_double() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  // Unbiased uniform integer in [0, bound) via multiply-shift rejection.
  std::uint64_t next_below(std::uint64_t bound) {
    using u128 = unsigned __int128;
    u128 m = static_cast<u128>(next_u64()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = -bound % bound;
      while (low < threshold) {
        m = static_cast<u128>(next_u64()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  static std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
  }

 private:
  static constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

  // Increment derivation from the SplittableRandom construction: force odd,
  // reject weakly mixed candidates.
  static std::uint64_t mix_gamma(std::uint64_t z) {
    z = mix64(z) | 1ULL;
    if (std::popcount(z ^ (z >> 1)) < 24) z ^= 0xaaaaaaaaaaaaaaaaULL;
    return z;
  }

  std::uint64_t state_;
  std::uint64_t gamma_;
};

// Deterministic per-replica seed: replica r of a run with master seed s gets
// substream_seed(s, r) no matter which thread executes it.
inline std::uint64_t substream_seed(std::uint64_t master_seed, std::uint64_t index) {
  return SplitMix64::mix64(master_seed + 0x9e3779b97f4a7c15ULL * (index + 1));
}

}  // namespace rumorlab

#endif  // RUMORLAB_RNG_HPP_
