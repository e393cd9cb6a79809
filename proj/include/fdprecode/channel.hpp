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

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "fdprecode/rng.hpp"

namespace fdprecode
{

using cdouble = std::complex<double>;
using CVector = std::vector<cdouble>;

// Flat-fading channel gains, n_r rows (receive antennas) by n_t columns
// (transmit antennas), stored row-major.
class ChannelMatrix
{
public:
    ChannelMatrix(std::size_t nr, std::size_t nt);
    ChannelMatrix(std::size_t nr, std::size_t nt, std::vector<cdouble> row_major);

    std::size_t nr() const noexcept { return nr_; }
    std::size_t nt() const noexcept { return nt_; }

    // Zero-based (receive, transmit) index.
    const cdouble &operator()(std::size_t o, std::size_t q) const noexcept { return h_[o * nt_ + q]; }
    cdouble &operator()(std::size_t o, std::size_t q) noexcept { return h_[o * nt_ + q]; }

    std::span<const cdouble> data() const noexcept { return h_; }

    // ||H||_F^2
    double frobenius_norm2() const noexcept;

    // H * v for a length-n_t vector.
    CVector apply(std::span<const cdouble> v) const;

private:
    std::size_t nr_;
    std::size_t nt_;
    std::vector<cdouble> h_;
};

// Polar form of the column cross-correlations g_nm = sum_o conj(h_on) h_om
// for n > m. Entries are addressed with zero-based (n, m), n > m.
class CrossTerms
{
public:
    explicit CrossTerms(std::size_t nt);

    std::size_t nt() const noexcept { return nt_; }

    double rho(std::size_t n, std::size_t m) const noexcept { return rho_[index(n, m)]; }
    double alpha(std::size_t n, std::size_t m) const noexcept { return alpha_[index(n, m)]; }

    void set(std::size_t n, std::size_t m, cdouble g);

    cdouble value(std::size_t n, std::size_t m) const { return std::polar(rho(n, m), alpha(n, m)); }

private:
    static std::size_t index(std::size_t n, std::size_t m) noexcept { return n * (n - 1) / 2 + m; }

    std::size_t nt_;
    std::vector<double> rho_;
    std::vector<double> alpha_;
};

struct NoiseVector
{
    CVector n;
    double sigma2 = 0.0;
};

// i.i.d. CN(0,1) entries: (g1 + j g2) / sqrt(2).
ChannelMatrix sample_channel(std::size_t nt, std::size_t nr, RandomStream &stream);

// Column cross-correlations of H in polar form. alpha is the principal
// argument in (-pi, pi]; alpha = 0 where rho = 0.
CrossTerms gram_cross_terms(const ChannelMatrix &H);

// Unnormalized g_nm = sum_o conj(h_on) h_om for any n, m (zero-based).
cdouble column_correlation(const ChannelMatrix &H, std::size_t n, std::size_t m);

// i.i.d. CN(0, sigma2) entries, variance sigma2/2 per real dimension.
NoiseVector sample_noise(std::size_t nr, double sigma2, RandomStream &stream);

} // namespace fdprecode
