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

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include <doctest.h>

#include "photonctx/rng.hpp"

using namespace photonctx;

TEST_CASE("philox4x32-10 known-answer vectors") {
    // Reference vectors from the published test suite of the original
    // counter-based generator (Salmon et al., SC'11).
    const auto zero = detail::philox4x32({0u, 0u, 0u, 0u}, {0u, 0u});
    CHECK(zero[0] == 0x6627e8d5u);
    CHECK(zero[1] == 0xe169c58du);
    CHECK(zero[2] == 0xbc57ac4cu);
    CHECK(zero[3] == 0x9b00dbd8u);

    const auto ones = detail::philox4x32(
        {0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
        {0xffffffffu, 0xffffffffu});
    CHECK(ones[0] == 0x408f276du);
    CHECK(ones[1] == 0x41c83b0eu);
    CHECK(ones[2] == 0xa20bc7c6u);
    CHECK(ones[3] == 0x6d5451fdu);

    const auto pi = detail::philox4x32(
        {0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
        {0xa4093822u, 0x299f31d0u});
    CHECK(pi[0] == 0xd16cfe09u);
    CHECK(pi[1] == 0x94fdccebu);
    CHECK(pi[2] == 0x5001e420u);
    CHECK(pi[3] == 0x24126ea1u);
}

TEST_CASE("identical seed and stream give identical sequences") {
    PhiloxRng a(42, 7);
    PhiloxRng b(42, 7);
    for (int i = 0; i < 100; ++i) {
        CHECK(a.next_u64() == b.next_u64());
    }
}

TEST_CASE("different streams decorrelate") {
    PhiloxRng a(42, 0);
    PhiloxRng b(42, 1);
    int equal = 0;
    for (int i = 0; i < 64; ++i) {
        equal += a.next_u32() == b.next_u32();
    }
    CHECK(equal < 4);
}

TEST_CASE("derive_seed is a deterministic injective-looking map") {
    CHECK(derive_seed(1, 0) == derive_seed(1, 0));
    CHECK(derive_seed(1, 0) != derive_seed(1, 1));
    CHECK(derive_seed(1, 0) != derive_seed(2, 0));

    std::vector<std::uint64_t> seen;
    for (std::uint64_t tag = 0; tag < 64; ++tag) {
        seen.push_back(derive_seed(99, tag));
    }
    std::sort(seen.begin(), seen.end());
    CHECK(std::adjacent_find(seen.begin(), seen.end()) == seen.end());
}

TEST_CASE("doubles fall in the unit interval with the right mean") {
    PhiloxRng rng(2026);
    double sum = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        const double u = rng.next_double();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        sum += u;
    }
    // se of the mean of n U(0,1) draws is 1/sqrt(12 n) ~ 0.0009.
    CHECK(std::abs(sum / n - 0.5) < 0.005);
}

TEST_CASE("bernoulli edge probabilities never misfire") {
    PhiloxRng rng(5);
    for (int i = 0; i < 1000; ++i) {
        CHECK(!rng.bernoulli(0.0));
        CHECK(rng.bernoulli(1.0));
    }
}
