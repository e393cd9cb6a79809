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

#include "fdprecode/detector.hpp"

#include <limits>
#include <string>

#include "fdprecode/error.hpp"

namespace fdprecode
{

namespace
{
// Running argmin; a later candidate must beat the incumbent by a relative
// margin, so exact and rounding-level ties resolve to the smaller index.
class TieBreakingArgMin
{
public:
    void offer(std::uint64_t k, double metric) noexcept
    {
        if (!found_ || metric < best_ - tie_margin * best_)
        {
            found_ = true;
            best_ = metric;
            index_ = k;
        }
    }
    std::uint64_t index() const noexcept { return index_; }

private:
    static constexpr double tie_margin = 1e-12;
    bool found_ = false;
    double best_ = std::numeric_limits<double>::infinity();
    std::uint64_t index_ = 0;
};

std::uint64_t checked_codebook_size(const ConstellationSets &cs, std::uint64_t budget, const char *who)
{
    const auto n = cs.codebook_size();
    if (!n || *n > budget)
        throw InfeasibleError(std::string(who) + ": codebook exceeds the exhaustive budget of " +
                              std::to_string(budget) + " codewords; use the sum-constellation decoder");
    return *n;
}
} // namespace

std::uint64_t ml_decode_bruteforce(std::span<const cdouble> y, const ChannelMatrix &H, const PrecoderMatrix &a,
                                   const ConstellationSets &cs, std::uint64_t budget)
{
    const std::uint64_t N = checked_codebook_size(cs, budget, "brute-force ML");
    const std::size_t nt = cs.nt();
    if (H.nt() != nt || a.nt() != nt || y.size() != H.nr())
        throw ConfigError("brute-force ML: dimension mismatch");

    const std::vector<cdouble> F = a.dense();
    CVector Fx(nt);
    TieBreakingArgMin best;
    for (std::uint64_t k = 0; k < N; ++k)
    {
        const CVector x = cs.codeword(k);
        for (std::size_t p = 0; p < nt; ++p)
        {
            cdouble acc{};
            for (std::size_t q = 0; q < nt; ++q)
                acc += F[p * nt + q] * x[q];
            Fx[p] = acc;
        }
        const CVector r = H.apply(Fx);
        double metric = 0.0;
        for (std::size_t o = 0; o < r.size(); ++o)
            metric += std::norm(y[o] - r[o]);
        best.offer(k, metric);
    }
    return best.index();
}

SumConstellationDecoder::SumConstellationDecoder(SumConstellation sc, double tol) : sc_(std::move(sc))
{
    if (sc_.size() < 2)
        throw ConfigError("sum constellation needs at least two points");
    const NearestPair np = nearest_pair(sc_.points);
    if (!(np.distance > tol))
        throw InfeasibleError("sum constellation is not injective: codewords " + std::to_string(np.first) +
                              " and " + std::to_string(np.second) + " share an effective symbol");
}

std::uint64_t SumConstellationDecoder::decode(std::span<const cdouble> y, std::span<const cdouble> h_eff) const
{
    if (y.size() != h_eff.size())
        throw ConfigError("received vector and effective channel differ in length");

    // ||y - h s||^2 = const + g |s_mf - s|^2 with g = ||h||^2, s_mf = h^H y / g.
    double g = 0.0;
    cdouble z{};
    for (std::size_t o = 0; o < y.size(); ++o)
    {
        g += std::norm(h_eff[o]);
        z += std::conj(h_eff[o]) * y[o];
    }
    if (g == 0.0)
        return 0;
    const cdouble s_mf = z / g;

    TieBreakingArgMin best;
    const auto &pts = sc_.points;
    for (std::size_t k = 0; k < pts.size(); ++k)
        best.offer(k, std::norm(s_mf - pts[k]));
    return best.index();
}

std::uint64_t ml_decode_fast(std::span<const cdouble> y, std::span<const cdouble> h_eff, const SumConstellation &sc)
{
    return SumConstellationDecoder(sc).decode(y, h_eff);
}

VBlastMlDecoder::VBlastMlDecoder(const ConstellationSets &cs, std::uint64_t budget) : nt_(cs.nt())
{
    const std::uint64_t N = checked_codebook_size(cs, budget, "V-BLAST ML");
    codewords_.reserve(N * nt_);
    for (std::uint64_t k = 0; k < N; ++k)
    {
        const CVector x = cs.codeword(k);
        codewords_.insert(codewords_.end(), x.begin(), x.end());
    }
}

std::uint64_t VBlastMlDecoder::decode(std::span<const cdouble> y, const ChannelMatrix &H) const
{
    if (H.nt() != nt_ || y.size() != H.nr())
        throw ConfigError("V-BLAST ML: dimension mismatch");
    const std::size_t N = codewords_.size() / nt_;
    TieBreakingArgMin best;
    for (std::size_t k = 0; k < N; ++k)
    {
        const cdouble *x = &codewords_[k * nt_];
        double metric = 0.0;
        for (std::size_t o = 0; o < H.nr(); ++o)
        {
            cdouble r{};
            for (std::size_t q = 0; q < nt_; ++q)
                r += H(o, q) * x[q];
            metric += std::norm(y[o] - r);
        }
        best.offer(k, metric);
    }
    return best.index();
}

} // namespace fdprecode
