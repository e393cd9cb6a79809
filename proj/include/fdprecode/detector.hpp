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

// Maximum-likelihood detection for y = H F x + n.
//
// Because F x = a * sum_i x_i, the metric ||y - H F x||^2 depends on the
// codeword only through s = sum_i x_i. The fast decoder therefore scans the
// sum constellation against the scalar channel h_eff = H a instead of the
// whole codebook; the brute-force decoder forms H F x explicitly and serves
// as its oracle. Both break ties towards the smallest codeword index.

#include <cstdint>
#include <span>
#include <vector>

#include "fdprecode/channel.hpp"
#include "fdprecode/constellation.hpp"
#include "fdprecode/precoder.hpp"

namespace fdprecode
{

inline constexpr std::uint64_t default_bruteforce_budget = std::uint64_t{1} << 16;

// Exhaustive argmin_x ||y - H F x||^2 over the codebook.
std::uint64_t ml_decode_bruteforce(std::span<const cdouble> y, const ChannelMatrix &H, const PrecoderMatrix &a,
                                   const ConstellationSets &cs, std::uint64_t budget = default_bruteforce_budget);

// Sum-constellation decoder. Construction verifies the codeword-to-sum map is
// injective and refuses otherwise; decode() is const and thread-safe.
class SumConstellationDecoder
{
public:
    explicit SumConstellationDecoder(SumConstellation sc, double tol = default_distinct_tolerance);

    std::uint64_t decode(std::span<const cdouble> y, std::span<const cdouble> h_eff) const;

    const SumConstellation &sums() const noexcept { return sc_; }

private:
    SumConstellation sc_;
};

// One-shot form of SumConstellationDecoder::decode.
std::uint64_t ml_decode_fast(std::span<const cdouble> y, std::span<const cdouble> h_eff, const SumConstellation &sc);

// Exhaustive ML for the unprecoded V-BLAST baseline, y = H x + n.
class VBlastMlDecoder
{
public:
    explicit VBlastMlDecoder(const ConstellationSets &cs, std::uint64_t budget = default_bruteforce_budget);

    std::uint64_t decode(std::span<const cdouble> y, const ChannelMatrix &H) const;

private:
    std::size_t nt_;
    std::vector<cdouble> codewords_; // codeword-major, nt entries each
};

} // namespace fdprecode
