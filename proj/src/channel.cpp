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

#include "fdprecode/channel.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fdprecode/error.hpp"

namespace fdprecode
{

namespace
{
void check_dims(std::size_t nr, std::size_t nt)
{
    if (nr < 1 || nt < 1)
        throw ConfigError("channel dimensions must be at least 1x1 (got nr=" + std::to_string(nr) +
                          ", nt=" + std::to_string(nt) + ")");
}
} // namespace

ChannelMatrix::ChannelMatrix(std::size_t nr, std::size_t nt) : nr_(nr), nt_(nt)
{
    check_dims(nr, nt);
    h_.assign(nr * nt, cdouble{});
}

ChannelMatrix::ChannelMatrix(std::size_t nr, std::size_t nt, std::vector<cdouble> row_major)
    : nr_(nr), nt_(nt), h_(std::move(row_major))
{
    check_dims(nr, nt);
    if (h_.size() != nr * nt)
        throw ConfigError("channel data has " + std::to_string(h_.size()) + " entries, expected " +
                          std::to_string(nr * nt));
    for (const auto &v : h_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw ConfigError("channel entries must be finite");
}

double ChannelMatrix::frobenius_norm2() const noexcept
{
    double s = 0.0;
    for (const auto &v : h_)
        s += std::norm(v);
    return s;
}

CVector ChannelMatrix::apply(std::span<const cdouble> v) const
{
    if (v.size() != nt_)
        throw ConfigError("vector length does not match channel columns");
    CVector out(nr_);
    for (std::size_t o = 0; o < nr_; ++o)
    {
        cdouble acc{};
        for (std::size_t q = 0; q < nt_; ++q)
            acc += h_[o * nt_ + q] * v[q];
        out[o] = acc;
    }
    return out;
}

CrossTerms::CrossTerms(std::size_t nt) : nt_(nt)
{
    if (nt < 1)
        throw ConfigError("cross terms need nt >= 1");
    rho_.assign(nt * (nt - 1) / 2, 0.0);
    alpha_.assign(nt * (nt - 1) / 2, 0.0);
}

void CrossTerms::set(std::size_t n, std::size_t m, cdouble g)
{
    const std::size_t k = index(n, m);
    rho_[k] = std::abs(g);
    double a = rho_[k] > 0.0 ? std::arg(g) : 0.0;
    // std::arg yields [-pi, pi]; fold -pi onto +pi.
    if (a == -std::numbers::pi)
        a = std::numbers::pi;
    alpha_[k] = a;
}

ChannelMatrix sample_channel(std::size_t nt, std::size_t nr, RandomStream &stream)
{
    check_dims(nr, nt);
    std::vector<cdouble> h(nr * nt);
    const double s = std::numbers::sqrt2 / 2.0;
    for (auto &v : h)
    {
        const double g1 = stream.normal();
        const double g2 = stream.normal();
        v = {g1 * s, g2 * s};
    }
    return ChannelMatrix(nr, nt, std::move(h));
}

cdouble column_correlation(const ChannelMatrix &H, std::size_t n, std::size_t m)
{
    cdouble g{};
    for (std::size_t o = 0; o < H.nr(); ++o)
        g += std::conj(H(o, n)) * H(o, m);
    return g;
}

CrossTerms gram_cross_terms(const ChannelMatrix &H)
{
    CrossTerms ct(H.nt());
    for (std::size_t n = 1; n < H.nt(); ++n)
        for (std::size_t m = 0; m < n; ++m)
            ct.set(n, m, column_correlation(H, n, m));
    return ct;
}

NoiseVector sample_noise(std::size_t nr, double sigma2, RandomStream &stream)
{
    if (nr < 1)
        throw ConfigError("noise vector needs nr >= 1");
    if (!(sigma2 > 0.0) || !std::isfinite(sigma2))
        throw ConfigError("noise variance must be positive and finite");
    NoiseVector out;
    out.sigma2 = sigma2;
    out.n.resize(nr);
    const double s = std::sqrt(sigma2 / 2.0);
    for (auto &v : out.n)
    {
        const double g1 = stream.normal();
        const double g2 = stream.normal();
        v = {g1 * s, g2 * s};
    }
    return out;
}

} // namespace fdprecode
