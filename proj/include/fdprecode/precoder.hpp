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

// Rank-one precoder F = [a a ... a] with unit-modulus entries a_i = e^{j theta_i}.
//
// The receiver picks theta_2..theta_nt so that, for every n >= 2,
//
//   sum_{m<n} rho_nm cos(theta_m - theta_n + alpha_nm) = 0,
//
// which removes the cross terms from F^H H^H H F. With that choice the
// received distance between codewords collapses to
//
//   ||H F dx||^2 = ||H||_F^2 |sum_i dx_i|^2,
//
// a chi-square variable with 2 n_t n_r degrees of freedom (full diversity).

#include <cstddef>
#include <span>
#include <vector>

#include "fdprecode/channel.hpp"

namespace fdprecode
{

// theta[0] is the reference antenna and is always 0; theta[1..] are the
// n_t - 1 values carried on the feedback link.
class FeedbackAngles
{
public:
    explicit FeedbackAngles(std::vector<double> theta);

    std::size_t nt() const noexcept { return theta_.size(); }
    double operator[](std::size_t i) const noexcept { return theta_[i]; }
    std::span<const double> theta() const noexcept { return theta_; }

    // The n_t - 1 reals sent to the transmitter.
    std::span<const double> payload() const noexcept { return std::span<const double>(theta_).subspan(1); }

private:
    std::vector<double> theta_;
};

class PrecoderMatrix
{
public:
    explicit PrecoderMatrix(CVector a);

    std::size_t nt() const noexcept { return a_.size(); }
    std::span<const cdouble> column() const noexcept { return a_; }

    // F x = a * sum_i x_i
    CVector apply(std::span<const cdouble> x) const;

    // Explicit n_t x n_t matrix, row-major. Used by oracle code paths only.
    std::vector<cdouble> dense() const;

private:
    CVector a_;
};

// Recursive angle computation; principal atan2 branch.
FeedbackAngles compute_feedback_angles(const CrossTerms &ct);

// Convenience: angles straight from a channel matrix.
FeedbackAngles compute_feedback_angles(const ChannelMatrix &H);

PrecoderMatrix build_precoder(const FeedbackAngles &angles);

// sum_{n>m} rho_nm cos(theta_m - theta_n + alpha_nm)
double phase_condition_residual(const ChannelMatrix &H, const FeedbackAngles &angles);

// Inner sums of the above for n = 2..n_t (index 0 holds n = 2).
std::vector<double> phase_condition_residuals_per_n(const ChannelMatrix &H, const FeedbackAngles &angles);

// h_eff = H a. y = h_eff * sum_i x_i + n for the precoded link.
CVector effective_channel(const ChannelMatrix &H, const PrecoderMatrix &a);

double squared_norm(std::span<const cdouble> v) noexcept;

} // namespace fdprecode
