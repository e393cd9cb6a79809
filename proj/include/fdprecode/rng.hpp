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

#pragma once

// Counter-based random streams (Philox4x32-10, Salmon et al., SC'11).
//
// Every Monte Carlo trial owns a stream addressed by (seed, substream, index).
// Streams never share state, so trials can be evaluated in any order and on
// any number of workers without changing a single drawn value.

#include <array>
#include <cstdint>
#include <limits>
#include <random>

namespace fdprecode
{

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

// One Philox4x32 block with 10 rounds.
constexpr PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key) noexcept
{
    constexpr std::uint32_t mul_a = 0xD2511F53u;
    constexpr std::uint32_t mul_b = 0xCD9E8D57u;
    constexpr std::uint32_t weyl_a = 0x9E3779B9u;
    constexpr std::uint32_t weyl_b = 0xBB67AE85u;

    for (int round = 0; round < 10; ++round)
    {
        const std::uint64_t p0 = static_cast<std::uint64_t>(mul_a) * ctr[0];
        const std::uint64_t p1 = static_cast<std::uint64_t>(mul_b) * ctr[2];
        const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
        const auto lo0 = static_cast<std::uint32_t>(p0);
        const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
        const auto lo1 = static_cast<std::uint32_t>(p1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += weyl_a;
        key[1] += weyl_b;
    }
    return ctr;
}

// Stream of 64-bit words; satisfies UniformRandomBitGenerator so the standard
// distributions can be used on top of it.
class RandomStream
{
public:
    using result_type = std::uint64_t;

    RandomStream(std::uint64_t seed, std::uint32_t substream, std::uint64_t index) noexcept
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          counter_{0u, static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32), substream}
    {
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept
    {
        if (used_ == 2)
        {
            block_ = philox4x32_10(counter_, key_);
            ++counter_[0];
            used_ = 0;
        }
        const std::size_t k = 2 * used_++;
        return static_cast<result_type>(block_[k]) | (static_cast<result_type>(block_[k + 1]) << 32);
    }

    // Standard normal deviate.
    double normal() { return gauss_(*this); }

    // Uniform integer in [0, n).
    std::uint64_t uniform_index(std::uint64_t n)
    {
        return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(*this);
    }

private:
    PhiloxKey key_;
    PhiloxCounter counter_;
    PhiloxCounter block_{};
    std::size_t used_ = 2;
    std::normal_distribution<double> gauss_;
};

// Substream tags keep independent uses of one seed apart.
namespace substream
{
inline constexpr std::uint32_t cer_trial = 0x10000000u; // + SNR point index
inline constexpr std::uint32_t dmin_sample = 0x20000000u;
inline constexpr std::uint32_t test = 0x7f000000u;
} // namespace substream

} // namespace fdprecode
