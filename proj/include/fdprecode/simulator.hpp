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
#include <optional>
#include <string>
#include <vector>

#include "fdprecode/constellation.hpp"
#include "fdprecode/statistics.hpp"

namespace fdprecode
{

enum class Scheme
{
    proposed,
    unprecoded_vblast,
};

std::string to_string(Scheme s);
Scheme parse_scheme(const std::string &s);

// SNR is the average received SNR per receive antenna. With E||H a||^2 =
// n_t n_r and E|sum x_i|^2 = E_s this gives sigma^2 = n_t E_s / snr for the
// precoded link and sigma^2 = E_s / snr for unprecoded V-BLAST.
struct SimConfig
{
    std::size_t nr = 1;
    std::optional<ConstellationSets> constellation;
    std::vector<double> snr_grid_db;
    std::uint64_t trials_per_point = 10000;
    // When nonzero, trials_per_point becomes a cap and a point stops once this
    // many codeword errors are counted (checked at fixed batch boundaries).
    std::uint64_t target_errors = 0;
    std::uint64_t seed = 1;
    Scheme scheme = Scheme::proposed;
    unsigned threads = 1;
    bool noiseless = false;

    std::size_t nt() const { return constellation ? constellation->nt() : 0; }

    // Throws ConfigError on any violated invariant.
    void validate() const;
};

struct CerPoint
{
    double snr_db = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t errors = 0;
    double cer = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
};

struct CerCurve
{
    std::vector<CerPoint> points;
};

struct DminSamples
{
    std::size_t nt = 0;
    std::size_t nr = 0;
    std::vector<double> z;

    std::size_t count() const noexcept { return z.size(); }
};

// Trials per work unit; results are independent of worker count because
// every trial draws from its own counter-based stream.
inline constexpr std::uint64_t trials_per_batch = 1024;

CerCurve run_cer_sweep(const SimConfig &cfg);

// z = 2 ||H a||^2 per channel draw (= 2 ||H||_F^2 once the phase condition
// holds), distributed chi-square with 2 n_t n_r degrees of freedom.
DminSamples sample_dmin_pdf(const SimConfig &cfg, std::size_t count);

KsResult ks_test_chisq(const DminSamples &samples, int dof);

// Least-squares slope of -log10(CER) against log10(SNR) over points with
// cer_lo <= CER <= cer_hi and at least min_errors errors.
double estimate_diversity_slope(const CerCurve &curve, double cer_lo, double cer_hi,
                                std::uint64_t min_errors = 100);

} // namespace fdprecode
