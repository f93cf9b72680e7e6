// Copyright 2026 The photonctx Authors
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

/**
 * @file
 * Counter-based random streams (Philox4x32-10). A generator is addressed
 * by (seed, stream): any stream of any seed can be created independently
 * at any time, which is what makes trial-parallel simulation reproducible
 * regardless of scheduling. Verified against the reference known-answer
 * vectors of the Philox authors.
 */

#pragma once

#include <array>
#include <cstdint>

namespace photonctx {

namespace detail {

inline constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
inline constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
inline constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
inline constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

/// One 10-round Philox4x32 block: 128-bit counter, 64-bit key -> 128 bits.
inline std::array<std::uint32_t, 4>
philox4x32(std::array<std::uint32_t, 4> ctr, std::array<std::uint32_t, 2> key) {
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            key[0] += kPhiloxW0;
            key[1] += kPhiloxW1;
        }
        const std::uint64_t p0 = std::uint64_t(kPhiloxM0) * ctr[0];
        const std::uint64_t p1 = std::uint64_t(kPhiloxM1) * ctr[2];
        ctr = {std::uint32_t(p1 >> 32) ^ ctr[1] ^ key[0], std::uint32_t(p1),
               std::uint32_t(p0 >> 32) ^ ctr[3] ^ key[1], std::uint32_t(p0)};
    }
    return ctr;
}

} // namespace detail

/// Keyed derivation of a child seed from (master, tag); used to give every
/// experiment, sweep point, and context its own independent seed space.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t tag) {
    const auto out = detail::philox4x32(
        {std::uint32_t(tag), std::uint32_t(tag >> 32), 0x70686F74u, 0x6F6E6378u},
        {std::uint32_t(master), std::uint32_t(master >> 32)});
    return (std::uint64_t(out[1]) << 32) | out[0];
}

/// Philox4x32-10 stream generator. The key holds the seed; the high half
/// of the counter holds the stream id; the low half counts blocks. Streams
/// with distinct (seed, stream) pairs are statistically independent.
class PhiloxRng {
  public:
    explicit PhiloxRng(std::uint64_t seed, std::uint64_t stream = 0)
        : key_{std::uint32_t(seed), std::uint32_t(seed >> 32)},
          base_{0u, 0u, std::uint32_t(stream), std::uint32_t(stream >> 32)} {}

    std::uint32_t next_u32() {
        if (pos_ == 4) {
            refill();
        }
        return block_[pos_++];
    }

    std::uint64_t next_u64() {
        const std::uint64_t hi = next_u32();
        return (hi << 32) | next_u32();
    }

    /// Uniform in [0, 1) with 53 random bits.
    double next_double() {
        return double(next_u64() >> 11) * 0x1.0p-53;
    }

    /// True with probability p (p <= 0 never, p >= 1 always).
    bool bernoulli(double p) { return next_double() < p; }

  private:
    void refill() {
        block_ = detail::philox4x32(base_, key_);
        pos_ = 0;
        if (++base_[0] == 0) {
            ++base_[1];
        }
    }

    std::array<std::uint32_t, 2> key_;
    std::array<std::uint32_t, 4> base_;
    std::array<std::uint32_t, 4> block_{};
    int pos_ = 4;
};

} // namespace photonctx
