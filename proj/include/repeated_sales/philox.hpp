// Copyright 2026 The Repeated Sales Authors
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

#ifndef REPEATED_SALES_PHILOX_HPP_
#define REPEATED_SALES_PHILOX_HPP_

#include <array>
#include <cstdint>

namespace rsales {

// Philox4x32-10 counter-based generator (Salmon et al., Random123).
using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

constexpr PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key) {
  constexpr std::uint32_t kM0 = 0xD2511F53u;
  constexpr std::uint32_t kM1 = 0xCD9E8D57u;
  constexpr std::uint32_t kW0 = 0x9E3779B9u;
  constexpr std::uint32_t kW1 = 0xBB67AE85u;
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kW0;
      key[1] += kW1;
    }
    const std::uint64_t p0 = std::uint64_t{kM0} * ctr[0];
    const std::uint64_t p1 = std::uint64_t{kM1} * ctr[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

// An independent stream of uniforms for one (seed, stream) pair. The n-th
// draw of a stream is a pure function of (seed, stream, n), so Monte Carlo
// replicates are reproducible regardless of how they are scheduled.
class PhiloxStream {
 public:
  PhiloxStream(std::uint64_t seed, std::uint64_t stream)
      : key_{static_cast<std::uint32_t>(seed),
             static_cast<std::uint32_t>(seed >> 32)},
        stream_(stream) {}

  // Uniform double in [0, 1) with 53 random bits.
  double next_double() {
    if (cached_ == 0) refill();
    const std::uint64_t bits = block_[2 - cached_];
    --cached_;
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
  }

  // Uniform double in (0, 1].
  double next_open_closed() { return 1.0 - next_double(); }

 private:
  void refill() {
    const PhiloxCounter out = philox4x32_10(
        {static_cast<std::uint32_t>(stream_),
         static_cast<std::uint32_t>(stream_ >> 32),
         static_cast<std::uint32_t>(block_index_),
         static_cast<std::uint32_t>(block_index_ >> 32)},
        key_);
    ++block_index_;
    block_[0] = (std::uint64_t{out[0]} << 32) | out[1];
    block_[1] = (std::uint64_t{out[2]} << 32) | out[3];
    cached_ = 2;
  }

  PhiloxKey key_;
  std::uint64_t stream_;
  std::uint64_t block_index_ = 0;
  std::array<std::uint64_t, 2> block_{};
  int cached_ = 0;
};

}  // namespace rsales

#endif  // REPEATED_SALES_PHILOX_HPP_
