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

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fdprecode/channel.hpp"

namespace fdprecode
{

// Maximum number of sum points any enumeration may build.
inline constexpr std::uint64_t default_enumeration_budget = std::uint64_t{1} << 20;

// Absolute tolerance on |sum_i dx_i| below which two codewords collide.
inline constexpr double default_distinct_tolerance = 1e-12;

// Per-antenna symbol alphabets C_1..C_nt, each with 2^bits points.
class ConstellationSets
{
public:
    ConstellationSets(int bits_per_symbol, std::vector<CVector> sets);

    std::size_t nt() const noexcept { return sets_.size(); }
    int bits_per_symbol() const noexcept { return bits_; }
    std::size_t points_per_set() const noexcept { return std::size_t{1} << bits_; }
    const CVector &set(std::size_t i) const noexcept { return sets_[i]; }
    const std::vector<CVector> &sets() const noexcept { return sets_; }

    // prod_i |C_i|, or nullopt when it does not fit in 64 bits.
    std::optional<std::uint64_t> codebook_size() const noexcept;

    // Per-antenna point indices of codeword k; antenna 1 is the most
    // significant digit.
    std::vector<std::size_t> digits(std::uint64_t k) const;
    std::uint64_t index_of(std::span<const std::size_t> digits) const;

    // Symbol vector x of codeword k.
    CVector codeword(std::uint64_t k) const;

private:
    int bits_;
    std::vector<CVector> sets_;
};

// All effective symbols s_k = sum_i x_i, in codeword-index order.
struct SumConstellation
{
    std::size_t nt = 0;
    std::size_t points_per_set = 0;
    std::vector<cdouble> points;

    std::size_t size() const noexcept { return points.size(); }
};

struct NearestPair
{
    std::size_t first = 0;
    std::size_t second = 0;
    double distance = 0.0;
};

struct DiversityReport
{
    bool passes = false;
    double min_sum_distance = 0.0;
    // Codeword indices (first < second) attaining min_sum_distance.
    std::optional<std::pair<std::uint64_t, std::uint64_t>> witness;
    std::uint64_t pairs_checked = 0;
};

// Grid for the rotation/scaling search. Scales run over
// {scale_step, 2 scale_step, ...} <= 1, phases over {0, 2pi/phase_divisions, ...}.
struct SearchGrid
{
    double scale_step = 0.025;
    int phase_divisions = 72;
    // Zero-based antennas whose (b, phi) are searched. nullopt means every
    // antenna except the first; the rest keep b = 1, phi = 0.
    std::optional<std::vector<std::size_t>> free_antennas;
};

struct OptimizedSets
{
    ConstellationSets sets;
    std::vector<double> scales;
    std::vector<double> phases;
    double min_sum_distance = 0.0;
    double average_energy = 0.0;
    std::uint64_t candidates_evaluated = 0;
};

// Q_M with odd-integer levels: M = 2 gives {-1, +1}; square M gives
// {u + jv : u, v in {-(L-1), ..., L-1} step 2}, L = sqrt(M), ordered
// real-major.
CVector qam_points(std::size_t M);

// Built-in preset sets for nt in {3, 4, 8, 16}, bits in {1, 2, 4}.
ConstellationSets preset(std::size_t nt, int bits);

// False for presets whose full-diversity property does not hold under the
// odd-integer QAM convention (the 16-QAM column).
bool preset_verified(std::size_t nt, int bits);

// C_i = ratio^(i-1) Q_M
ConstellationSets geometric_qam_family(std::size_t nt, std::size_t M, double ratio);

SumConstellation sum_constellation(const ConstellationSets &cs,
                                   std::uint64_t budget = default_enumeration_budget);

// Closest pair of points, O(N log N) plane sweep. Requires at least two points.
NearestPair nearest_pair(std::span<const cdouble> points);

DiversityReport check_full_diversity(const ConstellationSets &cs, double tol = default_distinct_tolerance,
                                     std::uint64_t budget = default_enumeration_budget);

// min over distinct codewords of |sum_i dx_i|
double min_sum_distance(const ConstellationSets &cs, std::uint64_t budget = default_enumeration_budget);

// sum_i mean_{x in C_i} |x|^2
double average_energy(const ConstellationSets &cs);

// C_i' = b_i e^{j phi_i} C_i maximizing min_sum_distance subject to
// average_energy <= power_budget and full diversity. Ties go to the
// lexicographically smallest (b_1, phi_1, b_2, phi_2, ...).
OptimizedSets optimize_rotations_scalings(const ConstellationSets &base, const SearchGrid &grid,
                                          double power_budget, double tol = default_distinct_tolerance);

// Plain-text format: header "nt bits", then one "i re im" line per point
// (1-based antenna index, 17 significant digits). '#' starts a comment.
void write_constellation(std::ostream &os, const ConstellationSets &cs);
void write_constellation(const std::filesystem::path &path, const ConstellationSets &cs);
ConstellationSets read_constellation(std::istream &is);
ConstellationSets read_constellation(const std::filesystem::path &path);

} // namespace fdprecode
