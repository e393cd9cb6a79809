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

#include <filesystem>
#include <string>
#include <vector>

#include "fdprecode/simulator.hpp"

namespace fdprecode::cli
{

struct HistogramBin
{
    double lo = 0.0;
    double hi = 0.0;
    std::uint64_t count = 0;
    double density = 0.0;
};

// Log-scale CER against SNR (dB), with dashed guides of slope -diversity.
std::string cer_plot_svg(const CerCurve &curve, int diversity, const std::string &title);

// Empirical density of normalized d2min with the chi-square pdf overlaid.
std::string dmin_pdf_svg(const std::vector<HistogramBin> &bins, int dof, const std::string &title);

void write_text_file(const std::filesystem::path &path, const std::string &text);

} // namespace fdprecode::cli
