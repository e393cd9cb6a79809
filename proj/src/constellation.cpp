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

#include "fdprecode/constellation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <set>
#include <string>

#include "fdprecode/error.hpp"

namespace fdprecode
{

ConstellationSets::ConstellationSets(int bits_per_symbol, std::vector<CVector> sets)
    : bits_(bits_per_symbol), sets_(std::move(sets))
{
    if (bits_ < 1 || bits_ > 16)
        throw ConfigError("bits per symbol must be in [1, 16], got " + std::to_string(bits_));
    if (sets_.empty())
        throw ConfigError("constellation needs at least one antenna");
    const std::size_t M = points_per_set();
    for (std::size_t i = 0; i < sets_.size(); ++i)
    {
        const CVector &c = sets_[i];
        if (c.size() != M)
            throw ConfigError("set " + std::to_string(i + 1) + " has " + std::to_string(c.size()) +
                              " points, expected " + std::to_string(M));
        for (const auto &x : c)
            if (!std::isfinite(x.real()) || !std::isfinite(x.imag()))
                throw ConfigError("set " + std::to_string(i + 1) + " has a non-finite point");
        for (std::size_t a = 0; a < M; ++a)
            for (std::size_t b = a + 1; b < M; ++b)
                if (std::abs(c[a] - c[b]) <= default_distinct_tolerance)
                    throw ConfigError("set " + std::to_string(i + 1) + " has repeated points");
    }
}

std::optional<std::uint64_t> ConstellationSets::codebook_size() const noexcept
{
    const auto total_bits = static_cast<std::uint64_t>(bits_) * sets_.size();
    if (total_bits >= 64)
        return std::nullopt;
    return std::uint64_t{1} << total_bits;
}

std::vector<std::size_t> ConstellationSets::digits(std::uint64_t k) const
{
    std::vector<std::size_t> d(sets_.size());
    const std::uint64_t mask = points_per_set() - 1;
    for (std::size_t i = sets_.size(); i-- > 0;)
    {
        d[i] = static_cast<std::size_t>(k & mask);
        k >>= bits_;
    }
    return d;
}

std::uint64_t ConstellationSets::index_of(std::span<const std::size_t> digits) const
{
    if (digits.size() != sets_.size())
        throw ConfigError("digit count does not match antenna count");
    std::uint64_t k = 0;
    for (std::size_t d : digits)
    {
        if (d >= points_per_set())
            throw ConfigError("point index out of range");
        k = (k << bits_) | d;
    }
    return k;
}

CVector ConstellationSets::codeword(std::uint64_t k) const
{
    const auto d = digits(k);
    CVector x(sets_.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        x[i] = sets_[i][d[i]];
    return x;
}

CVector qam_points(std::size_t M)
{
    if (M == 2)
        return {cdouble{-1.0, 0.0}, cdouble{1.0, 0.0}};
    const auto L = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(M))));
    if (M < 4 || L * L != M || (L & (L - 1)) != 0)
        throw ConfigError("QAM size must be 2 or a square power of two, got " + std::to_string(M));
    CVector pts;
    pts.reserve(M);
    const double top = static_cast<double>(L) - 1.0;
    for (std::size_t u = 0; u < L; ++u)
        for (std::size_t v = 0; v < L; ++v)
            pts.emplace_back(-top + 2.0 * static_cast<double>(u), -top + 2.0 * static_cast<double>(v));
    return pts;
}

namespace
{
bool is_preset(std::size_t nt, int bits)
{
    return (nt == 3 || nt == 4 || nt == 8 || nt == 16) && (bits == 1 || bits == 2 || bits == 4);
}

CVector scaled(const CVector &base, cdouble factor)
{
    CVector out(base.size());
    std::transform(base.begin(), base.end(), out.begin(), [&](cdouble x) { return factor * x; });
    return out;
}
} // namespace

ConstellationSets preset(std::size_t nt, int bits)
{
    if (!is_preset(nt, bits))
        throw ConfigError("no preset for nt=" + std::to_string(nt) + ", bits=" + std::to_string(bits) +
                          " (nt in {3,4,8,16}, bits in {1,2,4})");

    std::vector<CVector> sets;
    sets.reserve(nt);
    switch (bits)
    {
    case 1:
    {
        // {+-1}, {+-j}, {+-1/2}, {+-j/2}, {+-1/4}, ...
        const CVector bpsk = qam_points(2);
        for (std::size_t i = 0; i < nt; ++i)
        {
            const double mag = std::ldexp(1.0, -static_cast<int>(i / 2));
            const cdouble rot = (i % 2 == 0) ? cdouble{1.0, 0.0} : cdouble{0.0, 1.0};
            sets.push_back(scaled(bpsk, mag * rot));
        }
        if (nt == 3)
            sets[2] = scaled(bpsk, std::polar(0.675, std::numbers::pi / 4.0));
        break;
    }
    case 2:
    {
        const CVector q4 = qam_points(4);
        for (std::size_t i = 0; i < nt; ++i)
            sets.push_back(scaled(q4, std::ldexp(1.0, -static_cast<int>(i))));
        break;
    }
    default:
    {
        // 1, 1/14, 1/28, 1/56, ...
        const CVector q16 = qam_points(16);
        sets.push_back(q16);
        for (std::size_t i = 1; i < nt; ++i)
            sets.push_back(scaled(q16, 1.0 / (14.0 * std::ldexp(1.0, static_cast<int>(i) - 1))));
        break;
    }
    }
    return ConstellationSets(bits, std::move(sets));
}

bool preset_verified(std::size_t nt, int bits)
{
    return is_preset(nt, bits) && bits != 4;
}

ConstellationSets geometric_qam_family(std::size_t nt, std::size_t M, double ratio)
{
    if (nt < 1)
        throw ConfigError("geometric family needs nt >= 1");
    if (!(ratio > 0.0 && ratio < 1.0))
        throw ConfigError("geometric ratio must lie in (0, 1)");
    const CVector q = qam_points(M);
    const int bits = std::countr_zero(M);
    std::vector<CVector> sets;
    double scale = 1.0;
    for (std::size_t i = 0; i < nt; ++i, scale *= ratio)
        sets.push_back(scaled(q, scale));
    return ConstellationSets(bits, std::move(sets));
}

SumConstellation sum_constellation(const ConstellationSets &cs, std::uint64_t budget)
{
    const auto size = cs.codebook_size();
    if (!size || *size > budget)
        throw InfeasibleError("enumeration infeasible: codebook of " + std::to_string(cs.nt()) + " antennas x " +
                              std::to_string(cs.bits_per_symbol()) + " bits exceeds the budget of " +
                              std::to_string(budget) + " sum points");

    SumConstellation sc;
    sc.nt = cs.nt();
    sc.points_per_set = cs.points_per_set();
    sc.points.assign(1, cdouble{});
    // Grow antenna by antenna; each point keeps the left-to-right summation order.
    for (const CVector &c : cs.sets())
    {
        std::vector<cdouble> next;
        next.reserve(sc.points.size() * c.size());
        for (const auto &partial : sc.points)
            for (const auto &x : c)
                next.push_back(partial + x);
        sc.points = std::move(next);
    }
    return sc;
}

NearestPair nearest_pair(std::span<const cdouble> points)
{
    const std::size_t N = points.size();
    if (N < 2)
        throw ConfigError("nearest pair needs at least two points");

    std::vector<std::size_t> order(N);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const auto &pa = points[a];
        const auto &pb = points[b];
        if (pa.real() != pb.real())
            return pa.real() < pb.real();
        if (pa.imag() != pb.imag())
            return pa.imag() < pb.imag();
        return a < b;
    });

    NearestPair best{0, 0, std::numeric_limits<double>::infinity()};
    std::set<std::pair<double, std::size_t>> active;
    std::size_t left = 0;
    for (std::size_t r = 0; r < N; ++r)
    {
        const std::size_t i = order[r];
        const cdouble p = points[i];
        while (left < r && p.real() - points[order[left]].real() > best.distance)
        {
            active.erase({points[order[left]].imag(), order[left]});
            ++left;
        }
        for (auto it = active.lower_bound({p.imag() - best.distance, 0});
             it != active.end() && it->first <= p.imag() + best.distance; ++it)
        {
            const double d = std::abs(p - points[it->second]);
            if (d < best.distance)
                best = {std::min(i, it->second), std::max(i, it->second), d};
        }
        active.emplace(p.imag(), i);
    }
    return best;
}

DiversityReport check_full_diversity(const ConstellationSets &cs, double tol, std::uint64_t budget)
{
    if (!(tol >= 0.0))
        throw ConfigError("diversity tolerance must be nonnegative");
    const SumConstellation sc = sum_constellation(cs, budget);
    const NearestPair np = nearest_pair(sc.points);

    DiversityReport report;
    report.min_sum_distance = np.distance;
    report.passes = np.distance > tol;
    report.witness = std::make_pair(static_cast<std::uint64_t>(np.first), static_cast<std::uint64_t>(np.second));
    const auto n = static_cast<std::uint64_t>(sc.size());
    report.pairs_checked = n * (n - 1) / 2;
    return report;
}

double min_sum_distance(const ConstellationSets &cs, std::uint64_t budget)
{
    return check_full_diversity(cs, default_distinct_tolerance, budget).min_sum_distance;
}

double average_energy(const ConstellationSets &cs)
{
    double e = 0.0;
    for (const CVector &c : cs.sets())
    {
        double s = 0.0;
        for (const auto &x : c)
            s += std::norm(x);
        e += s / static_cast<double>(c.size());
    }
    return e;
}

OptimizedSets optimize_rotations_scalings(const ConstellationSets &base, const SearchGrid &grid, double power_budget,
                                          double tol)
{
    if (!(power_budget > 0.0) || !std::isfinite(power_budget))
        throw ConfigError("power budget must be positive");
    if (!(grid.scale_step > 0.0 && grid.scale_step <= 1.0))
        throw ConfigError("scale step must lie in (0, 1]");
    if (grid.phase_divisions < 1)
        throw ConfigError("phase divisions must be at least 1");

    const std::size_t nt = base.nt();
    std::vector<std::size_t> free;
    if (grid.free_antennas)
        free = *grid.free_antennas;
    else
        for (std::size_t i = 1; i < nt; ++i)
            free.push_back(i);
    std::sort(free.begin(), free.end());
    free.erase(std::unique(free.begin(), free.end()), free.end());
    for (std::size_t i : free)
        if (i >= nt)
            throw ConfigError("free antenna " + std::to_string(i + 1) + " exceeds nt=" + std::to_string(nt));

    // Candidate values, ascending. A small slack keeps 1.0 on the grid when
    // 1/scale_step is integral up to rounding.
    std::vector<double> scales;
    for (int k = 1;; ++k)
    {
        const double b = k * grid.scale_step;
        if (b > 1.0 + 1e-9)
            break;
        scales.push_back(std::min(b, 1.0));
    }
    std::vector<double> phases(static_cast<std::size_t>(grid.phase_divisions));
    for (std::size_t k = 0; k < phases.size(); ++k)
        phases[k] = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(grid.phase_divisions);

    const std::size_t options = scales.size() * phases.size();
    double combos = 1.0;
    for (std::size_t f = 0; f < free.size(); ++f)
        combos *= static_cast<double>(options);
    if (combos > 1e9)
        throw InfeasibleError("search grid too large: " + std::to_string(combos) + " candidates");
    if (auto n = base.codebook_size(); !n || *n > default_enumeration_budget)
        throw InfeasibleError("enumeration infeasible for the optimizer base constellation");

    std::vector<double> set_energy(nt);
    for (std::size_t i = 0; i < nt; ++i)
    {
        double s = 0.0;
        for (const auto &x : base.set(i))
            s += std::norm(x);
        set_energy[i] = s / static_cast<double>(base.set(i).size());
    }
    const double budget_cap = power_budget * (1.0 + 1e-12);

    std::vector<double> b(nt, 1.0);
    std::vector<double> phi(nt, 0.0);
    std::vector<std::size_t> odometer(free.size(), 0); // per free antenna: scale_idx * P + phase_idx

    std::optional<OptimizedSets> best;
    std::uint64_t evaluated = 0;
    std::vector<CVector> trial_sets = base.sets();
    std::vector<cdouble> sums;

    for (;;)
    {
        for (std::size_t f = 0; f < free.size(); ++f)
        {
            b[free[f]] = scales[odometer[f] / phases.size()];
            phi[free[f]] = phases[odometer[f] % phases.size()];
        }
        double energy = 0.0;
        for (std::size_t i = 0; i < nt; ++i)
            energy += b[i] * b[i] * set_energy[i];

        if (energy <= budget_cap)
        {
            ++evaluated;
            for (std::size_t i = 0; i < nt; ++i)
            {
                const cdouble factor = std::polar(b[i], phi[i]);
                for (std::size_t k = 0; k < trial_sets[i].size(); ++k)
                    trial_sets[i][k] = factor * base.set(i)[k];
            }
            sums.assign(1, cdouble{});
            for (const CVector &c : trial_sets)
            {
                std::vector<cdouble> next;
                next.reserve(sums.size() * c.size());
                for (const auto &p : sums)
                    for (const auto &x : c)
                        next.push_back(p + x);
                sums = std::move(next);
            }
            const double d = sums.size() < 2 ? std::numeric_limits<double>::infinity() : nearest_pair(sums).distance;
            if (d > tol && (!best || d > best->min_sum_distance * (1.0 + 1e-12)))
                best = OptimizedSets{ConstellationSets(base.bits_per_symbol(), trial_sets), b, phi, d, energy, 0};
        }

        if (free.empty())
            break;
        bool advanced = false;
        for (std::size_t f = free.size(); f-- > 0;)
        {
            if (++odometer[f] < options)
            {
                advanced = true;
                break;
            }
            odometer[f] = 0;
        }
        if (!advanced)
            break;
    }

    if (!best)
        throw InfeasibleError("no full-diversity point found on the search grid within power budget " +
                              std::to_string(power_budget));
    best->candidates_evaluated = evaluated;
    return *best;
}

} // namespace fdprecode
