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

// Flat "key = value" run configuration. Command-line flags are merged on top
// of file values before interpretation.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fdprecode/constellation.hpp"
#include "fdprecode/simulator.hpp"

namespace fdprecode::cli
{

using KeyValues = std::map<std::string, std::string>;

// Lines are "key = value"; blank lines and '#' comments are ignored. Throws
// IoError on unreadable files or malformed lines, ConfigError on unknown keys.
KeyValues read_config_file(const std::filesystem::path &path);

// Values in `overrides` replace those in `base`.
KeyValues merge(KeyValues base, const KeyValues &overrides);

std::uint64_t get_uint(const KeyValues &kv, const std::string &key, std::uint64_t fallback);
double get_double(const KeyValues &kv, const std::string &key, double fallback);
bool get_bool(const KeyValues &kv, const std::string &key, bool fallback);
std::optional<std::string> get(const KeyValues &kv, const std::string &key);

// "A:B:STEP" (inclusive of B up to rounding) or a comma-separated list.
std::vector<double> parse_snr_grid(const std::string &text);

// "NTxBITS", e.g. "3x1". nullopt when the text is not of that shape.
std::optional<std::pair<std::size_t, int>> parse_preset_id(const std::string &text);

// Constellation from "preset", "constellation" (file) or "nt"/"bits"/"ratio"
// (geometric family) keys, in that order of precedence.
ConstellationSets resolve_constellation(const KeyValues &kv);

// Text used to record the constellation source in manifests and reports.
std::string describe_constellation_source(const KeyValues &kv);

unsigned resolve_threads(const KeyValues &kv);

SimConfig build_sim_config(const KeyValues &kv);

std::string format_number(double v);

} // namespace fdprecode::cli
