// Copyright 2026 The holoq Authors
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

// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
//
// Streams: the 64-bit key is the user seed; the 128-bit counter is
// (stream id, draw index). Shot n of a run with seed s draws from stream n,
// so results do not depend on how shots are distributed over threads.

#ifndef HOLOQ_RNG_HPP_
#define HOLOQ_RNG_HPP_

#include <array>
#include <cstdint>

namespace holoq {

using PhiloxBlock = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

PhiloxBlock philox4x32_10(PhiloxBlock counter, PhiloxKey key);

class PhiloxStream {
 public:
  PhiloxStream(std::uint64_t seed, std::uint64_t stream)
      : seed_(seed), stream_(stream) {}

  // Uniform double in [0, 1) with 53 random bits.
  double uniform();
  // Standard normal (Box-Muller, one value per call).
  double normal();
  std::uint64_t next_u64();

  std::uint64_t draws() const { return draw_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t draw_ = 0;
};

// Derives an independent seed for sub-task `tag` of a run seeded by `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag);

}  // namespace holoq

#endif  // HOLOQ_RNG_HPP_
