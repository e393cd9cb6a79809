// SPDX-License-Identifier: Apache-2.0
//
// fdprecode: full-rate full-diversity MIMO precoding with angle feedback
// Copyright (C) 2026 The fdprecode authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <vector>

#include "fdprecode/rng.hpp"

using namespace fdprecode;

TEST_CASE("Philox4x32-10 known-answer vectors")
{
    // Reference outputs published with Random123.
    CHECK(philox4x32_10({0u, 0u, 0u, 0u}, {0u, 0u}) ==
          PhiloxCounter{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
    CHECK(philox4x32_10({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, {0xffffffffu, 0xffffffffu}) ==
          PhiloxCounter{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
    CHECK(philox4x32_10({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, {0xa4093822u, 0x299f31d0u}) ==
          PhiloxCounter{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("Streams are reproducible and distinct")
{
    RandomStream a(7, 1, 42);
    RandomStream b(7, 1, 42);
    for (int i = 0; i < 100; ++i)
        REQUIRE(a() == b());

    // Neighbouring indices, substreams and seeds give different words.
    std::set<std::uint64_t> first_words;
    for (std::uint64_t idx = 0; idx < 50; ++idx)
        for (std::uint32_t sub = 0; sub < 4; ++sub)
            for (std::uint64_t seed = 0; seed < 4; ++seed)
                first_words.insert(RandomStream(seed, sub, idx)());
    CHECK(first_words.size() == 50 * 4 * 4);
}

TEST_CASE("Stream uniform_index stays in range and covers it")
{
    RandomStream s(1, 0, 0);
    std::vector<int> hits(5, 0);
    for (int i = 0; i < 5000; ++i)
    {
        const auto k = s.uniform_index(5);
        REQUIRE(k < 5);
        ++hits[k];
    }
    for (int h : hits)
        CHECK(h > 850);
}
