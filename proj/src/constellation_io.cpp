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

#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "fdprecode/constellation.hpp"
#include "fdprecode/error.hpp"

namespace fdprecode
{

namespace
{
std::string format_double(double v)
{
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
    return std::string(buf.data(), res.ptr);
}

template <typename T> bool parse_number(const std::string &tok, T &out)
{
    const char *first = tok.data();
    const char *last = tok.data() + tok.size();
    if (first != last && *first == '+')
        ++first;
    const auto res = std::from_chars(first, last, out);
    return res.ec == std::errc{} && res.ptr == last;
}

[[noreturn]] void malformed(std::size_t line, const std::string &what)
{
    throw IoError("malformed constellation file, line " + std::to_string(line) + ": " + what);
}
} // namespace

void write_constellation(std::ostream &os, const ConstellationSets &cs)
{
    os << cs.nt() << ' ' << cs.bits_per_symbol() << '\n';
    for (std::size_t i = 0; i < cs.nt(); ++i)
        for (const auto &x : cs.set(i))
            os << (i + 1) << ' ' << format_double(x.real()) << ' ' << format_double(x.imag()) << '\n';
}

void write_constellation(const std::filesystem::path &path, const ConstellationSets &cs)
{
    std::ofstream os(path);
    if (!os)
        throw IoError("cannot write constellation file: " + path.string());
    write_constellation(os, cs);
    if (!os)
        throw IoError("error while writing constellation file: " + path.string());
}

ConstellationSets read_constellation(std::istream &is)
{
    std::string line;
    std::size_t lineno = 0;
    bool have_header = false;
    std::size_t nt = 0;
    int bits = 0;
    std::vector<CVector> sets;

    while (std::getline(is, line))
    {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::istringstream ss(line);
        std::vector<std::string> tok;
        for (std::string t; ss >> t;)
            tok.push_back(t);
        if (tok.empty())
            continue;

        if (!have_header)
        {
            if (tok.size() != 2 || !parse_number(tok[0], nt) || !parse_number(tok[1], bits))
                malformed(lineno, "expected header 'nt bits'");
            if (nt < 1 || nt > 64 || bits < 1 || bits > 16)
                malformed(lineno, "header values out of range");
            sets.assign(nt, {});
            have_header = true;
            continue;
        }

        std::size_t antenna = 0;
        double re = 0.0;
        double im = 0.0;
        if (tok.size() != 3 || !parse_number(tok[0], antenna) || !parse_number(tok[1], re) ||
            !parse_number(tok[2], im))
            malformed(lineno, "expected 'i re im'");
        if (antenna < 1 || antenna > nt)
            malformed(lineno, "antenna index " + tok[0] + " outside 1.." + std::to_string(nt));
        sets[antenna - 1].emplace_back(re, im);
    }
    if (!have_header)
        throw IoError("malformed constellation file: missing header");

    try
    {
        return ConstellationSets(bits, std::move(sets));
    }
    catch (const ConfigError &e)
    {
        throw IoError(std::string("malformed constellation file: ") + e.what());
    }
}

ConstellationSets read_constellation(const std::filesystem::path &path)
{
    std::ifstream is(path);
    if (!is)
        throw IoError("cannot open constellation file: " + path.string());
    return read_constellation(is);
}

} // namespace fdprecode
