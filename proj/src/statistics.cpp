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

#include "fdprecode/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "fdprecode/error.hpp"

namespace fdprecode
{

namespace
{
void check_even_dof(int dof)
{
    if (dof <= 0 || dof % 2 != 0)
        throw ConfigError("chi-square degrees of freedom must be even and positive, got " + std::to_string(dof));
}
} // namespace

double chi_square_cdf(double x, int dof)
{
    check_even_dof(dof);
    if (!(x > 0.0))
        return 0.0;
    const double h = x / 2.0;
    const int a = dof / 2;
    const double log_h = std::log(h);
    const auto term = [&](int k) { return std::exp(-h + k * log_h - std::lgamma(k + 1.0)); };
    if (h < a)
    {
        // Lower series sum_{k >= a} e^-h h^k / k!, free of cancellation.
        double head = 0.0;
        for (int k = a;; ++k)
        {
            const double t = term(k);
            head += t;
            if (t <= 1e-17 * head || k > a + 1000)
                break;
        }
        return std::clamp(head, 0.0, 1.0);
    }
    double tail = 0.0;
    for (int k = 0; k < a; ++k)
        tail += term(k);
    return std::clamp(1.0 - tail, 0.0, 1.0);
}

double chi_square_pdf(double x, int dof)
{
    check_even_dof(dof);
    if (x < 0.0)
        return 0.0;
    const double k2 = dof / 2.0;
    if (x == 0.0)
        return dof == 2 ? 0.5 : 0.0;
    return std::exp((k2 - 1.0) * std::log(x) - x / 2.0 - k2 * std::numbers::ln2 - std::lgamma(k2));
}

double kolmogorov_survival(double lambda)
{
    if (!(lambda > 0.0))
        return 1.0;
    if (lambda < 1.18)
    {
        // Jacobi-theta form converges fast for small lambda.
        const double w = std::numbers::pi * std::numbers::pi / (8.0 * lambda * lambda);
        double s = 0.0;
        for (int k = 1; k < 50; ++k)
        {
            const double odd = 2.0 * k - 1.0;
            const double t = std::exp(-odd * odd * w);
            s += t;
            if (t < 1e-17 * s)
                break;
        }
        const double cdf = std::sqrt(2.0 * std::numbers::pi) / lambda * s;
        return std::clamp(1.0 - cdf, 0.0, 1.0);
    }
    double q = 0.0;
    double sign = 1.0;
    for (int k = 1; k < 100; ++k)
    {
        const double t = std::exp(-2.0 * k * k * lambda * lambda);
        q += sign * t;
        sign = -sign;
        if (t < 1e-17)
            break;
    }
    return std::clamp(2.0 * q, 0.0, 1.0);
}

KsResult ks_test(std::span<const double> samples, const std::function<double(double)> &cdf)
{
    if (samples.empty())
        throw ConfigError("KS test needs samples");
    std::vector<double> x(samples.begin(), samples.end());
    std::sort(x.begin(), x.end());
    const double n = static_cast<double>(x.size());
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
    {
        const double F = cdf(x[i]);
        const double fi = static_cast<double>(i);
        d = std::max({d, F - fi / n, (fi + 1.0) / n - F});
    }
    const double rn = std::sqrt(n);
    return {d, kolmogorov_survival((rn + 0.12 + 0.11 / rn) * d)};
}

WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials)
{
    if (successes > trials)
        throw ConfigError("more successes than trials");
    if (trials == 0)
        return {0.0, 1.0};
    constexpr double z = 1.959963984540054;
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double denom = 1.0 + z * z / n;
    const double center = (p + z * z / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

} // namespace fdprecode
