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

#include "fdprecode/precoder.hpp"

#include <cmath>
#include <numbers>

#include "fdprecode/error.hpp"

namespace fdprecode
{

namespace
{
// Below this both components of the recursion step are treated as zero and
// the constraint for that antenna is vacuous.
constexpr double degenerate_step = 1e-300;

void check_match(const ChannelMatrix &H, std::size_t nt)
{
    if (H.nt() != nt)
        throw ConfigError("precoder size does not match channel columns");
}
} // namespace

FeedbackAngles::FeedbackAngles(std::vector<double> theta) : theta_(std::move(theta))
{
    if (theta_.empty())
        throw ConfigError("feedback angles need nt >= 1");
    if (theta_[0] != 0.0)
        throw ConfigError("reference angle theta_1 must be 0");
    for (double t : theta_)
        if (!std::isfinite(t))
            throw ConfigError("feedback angles must be finite");
}

PrecoderMatrix::PrecoderMatrix(CVector a) : a_(std::move(a))
{
    if (a_.empty())
        throw ConfigError("precoder needs nt >= 1");
}

CVector PrecoderMatrix::apply(std::span<const cdouble> x) const
{
    if (x.size() != a_.size())
        throw ConfigError("symbol vector length does not match precoder");
    cdouble s{};
    for (const auto &v : x)
        s += v;
    CVector out(a_.size());
    for (std::size_t i = 0; i < a_.size(); ++i)
        out[i] = a_[i] * s;
    return out;
}

std::vector<cdouble> PrecoderMatrix::dense() const
{
    const std::size_t nt = a_.size();
    std::vector<cdouble> F(nt * nt);
    for (std::size_t p = 0; p < nt; ++p)
        for (std::size_t q = 0; q < nt; ++q)
            F[p * nt + q] = a_[p];
    return F;
}

FeedbackAngles compute_feedback_angles(const CrossTerms &ct)
{
    const std::size_t nt = ct.nt();
    if (nt < 2)
        throw ConfigError("feedback angles require nt >= 2");

    std::vector<double> theta(nt, 0.0);
    theta[1] = ct.alpha(1, 0) - std::numbers::pi / 2.0;
    for (std::size_t n = 2; n < nt; ++n)
    {
        double A = 0.0;
        double B = 0.0;
        for (std::size_t m = 0; m < n; ++m)
        {
            const double phase = theta[m] + ct.alpha(n, m);
            A += ct.rho(n, m) * std::cos(phase);
            B += ct.rho(n, m) * std::sin(phase);
        }
        // A cos(theta_n) + B sin(theta_n) = 0
        if (std::abs(A) < degenerate_step && std::abs(B) < degenerate_step)
            theta[n] = 0.0;
        else
            theta[n] = std::atan2(-A, B);
    }
    return FeedbackAngles(std::move(theta));
}

FeedbackAngles compute_feedback_angles(const ChannelMatrix &H)
{
    return compute_feedback_angles(gram_cross_terms(H));
}

PrecoderMatrix build_precoder(const FeedbackAngles &angles)
{
    CVector a(angles.nt());
    a[0] = 1.0;
    for (std::size_t i = 1; i < a.size(); ++i)
        a[i] = std::polar(1.0, angles[i]);
    return PrecoderMatrix(std::move(a));
}

std::vector<double> phase_condition_residuals_per_n(const ChannelMatrix &H, const FeedbackAngles &angles)
{
    check_match(H, angles.nt());
    const CrossTerms ct = gram_cross_terms(H);
    std::vector<double> out;
    for (std::size_t n = 1; n < angles.nt(); ++n)
    {
        double s = 0.0;
        for (std::size_t m = 0; m < n; ++m)
            s += ct.rho(n, m) * std::cos(angles[m] - angles[n] + ct.alpha(n, m));
        out.push_back(s);
    }
    return out;
}

double phase_condition_residual(const ChannelMatrix &H, const FeedbackAngles &angles)
{
    double s = 0.0;
    for (double r : phase_condition_residuals_per_n(H, angles))
        s += r;
    return s;
}

CVector effective_channel(const ChannelMatrix &H, const PrecoderMatrix &a)
{
    check_match(H, a.nt());
    return H.apply(a.column());
}

double squared_norm(std::span<const cdouble> v) noexcept
{
    double s = 0.0;
    for (const auto &x : v)
        s += std::norm(x);
    return s;
}

} // namespace fdprecode
