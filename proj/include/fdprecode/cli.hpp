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

#include <iosfwd>
#include <string>
#include <vector>

namespace fdprecode
{

inline constexpr const char *tool_version = "1.0.0";

// Command-line entry point. args[0] is the program name. Returns the process
// exit code: 0 success/pass, 1 domain failure, 2 usage or I/O error.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace fdprecode
