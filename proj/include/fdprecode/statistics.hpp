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

#include <cstdint>
#include <functional>
#include <span>

namespace fdprecode
{

// Chi-square CDF for even degrees of freedom:
// P(k/2, x/2) = 1 - e^{-x/2} sum_{i<k/2} (x/2)^i / i!
double chi_square_cdf(double x, int dof);

double chi_square_pdf(double x, int dof);

// Limiting Kolmogorov distribution tail, P(sqrt(n) D_n > lambda).
double kolmogorov_survival(double lambda);

struct KsResult
{
    double statistic = 0.0;
    double p_value = 0.0;
};

// One-sample two-sided KS test against a continuous CDF. The p-value uses the
// asymptotic distribution with Stephens' small-sample correction.
KsResult ks_test(std::span<const double> samples, const std::function<double(double)> &cdf);

struct WilsonInterval
{
    double lo = 0.0;
    double hi = 0.0;
};

// 95% Wilson score interval for a binomial proportion.
WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials);

} // namespace fdprecode
