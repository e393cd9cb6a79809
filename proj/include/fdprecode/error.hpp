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

#include <stdexcept>
#include <string>

namespace fdprecode
{

// Invalid dimensions, parameters or configuration values.
class ConfigError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// A well-formed request that cannot be carried out: enumeration over budget,
// no feasible optimizer point, ambiguous decoding.
class InfeasibleError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Missing, unreadable or malformed files.
class IoError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

} // namespace fdprecode
