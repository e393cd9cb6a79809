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

#include "cli/config.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>
#include <thread>

#include "fdprecode/error.hpp"

namespace fdprecode::cli
{

namespace
{
const std::set<std::string> known_keys = {
    "command", "tool_version", "timestamp", "outputs",                        // manifest bookkeeping
    "preset",  "constellation", "nt", "bits", "ratio",                        // constellation source
    "nr",      "snr", "trials", "target_errors", "seed", "scheme", "threads", // simulation
    "noiseless", "samples", "bins",                                           //
    "budget",  "scale_step", "phase_divisions", "free", "tol",                // optimizer / checker
    "out",     "plot",
};

std::string trim(const std::string &s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string &key, const std::string &text)
{
    double v = 0.0;
    const char *first = text.data();
    const char *last = text.data() + text.size();
    if (first != last && *first == '+')
        ++first;
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc{} || res.ptr != last || !std::isfinite(v))
        throw ConfigError("invalid number for '" + key + "': '" + text + "'");
    return v;
}
} // namespace

KeyValues read_config_file(const std::filesystem::path &path)
{
    std::ifstream is(path);
    if (!is)
        throw IoError("cannot open config file: " + path.string());
    KeyValues kv;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line))
    {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw IoError(path.string() + ":" + std::to_string(lineno) + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!known_keys.contains(key))
            throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
        kv[key] = value;
    }
    return kv;
}

KeyValues merge(KeyValues base, const KeyValues &overrides)
{
    for (const auto &[k, v] : overrides)
        base[k] = v;
    return base;
}

std::optional<std::string> get(const KeyValues &kv, const std::string &key)
{
    if (auto it = kv.find(key); it != kv.end() && !it->second.empty())
        return it->second;
    return std::nullopt;
}

std::uint64_t get_uint(const KeyValues &kv, const std::string &key, std::uint64_t fallback)
{
    const auto v = get(kv, key);
    if (!v)
        return fallback;
    std::uint64_t out = 0;
    const auto res = std::from_chars(v->data(), v->data() + v->size(), out);
    if (res.ec != std::errc{} || res.ptr != v->data() + v->size())
        throw ConfigError("invalid unsigned integer for '" + key + "': '" + *v + "'");
    return out;
}

double get_double(const KeyValues &kv, const std::string &key, double fallback)
{
    const auto v = get(kv, key);
    return v ? to_double(key, *v) : fallback;
}

bool get_bool(const KeyValues &kv, const std::string &key, bool fallback)
{
    const auto v = get(kv, key);
    if (!v)
        return fallback;
    if (*v == "true" || *v == "1" || *v == "yes")
        return true;
    if (*v == "false" || *v == "0" || *v == "no")
        return false;
    throw ConfigError("invalid boolean for '" + key + "': '" + *v + "'");
}

std::vector<double> parse_snr_grid(const std::string &text)
{
    std::vector<double> grid;
    if (text.find(':') != std::string::npos)
    {
        std::vector<std::string> parts;
        std::stringstream ss(text);
        for (std::string p; std::getline(ss, p, ':');)
            parts.push_back(trim(p));
        if (parts.size() != 3)
            throw ConfigError("SNR range must be A:B:STEP, got '" + text + "'");
        const double a = to_double("snr", parts[0]);
        const double b = to_double("snr", parts[1]);
        const double step = to_double("snr", parts[2]);
        if (!(step > 0.0) || b < a)
            throw ConfigError("SNR range needs STEP > 0 and B >= A, got '" + text + "'");
        const auto n = static_cast<std::size_t>(std::floor((b - a) / step + 1e-9));
        for (std::size_t i = 0; i <= n; ++i)
            grid.push_back(a + static_cast<double>(i) * step);
        return grid;
    }
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ',');)
        grid.push_back(to_double("snr", trim(p)));
    if (grid.empty())
        throw ConfigError("empty SNR grid");
    return grid;
}

std::optional<std::pair<std::size_t, int>> parse_preset_id(const std::string &text)
{
    static const std::regex pattern(R"(^\s*(\d+)\s*[xX]\s*(\d+)\s*$)");
    std::smatch m;
    if (!std::regex_match(text, m, pattern))
        return std::nullopt;
    return std::make_pair(static_cast<std::size_t>(std::stoul(m[1])), std::stoi(m[2]));
}

ConstellationSets resolve_constellation(const KeyValues &kv)
{
    if (const auto p = get(kv, "preset"))
    {
        const auto id = parse_preset_id(*p);
        if (!id)
            throw ConfigError("preset must look like NTxBITS (e.g. 3x1), got '" + *p + "'");
        return preset(id->first, id->second);
    }
    if (const auto f = get(kv, "constellation"))
        return read_constellation(std::filesystem::path(*f));
    if (get(kv, "nt"))
    {
        const auto nt = get_uint(kv, "nt", 0);
        const auto bits = get_uint(kv, "bits", 2);
        if (bits < 1 || bits > 16)
            throw ConfigError("bits must be in [1, 16]");
        return geometric_qam_family(nt, std::size_t{1} << bits, get_double(kv, "ratio", 0.5));
    }
    throw ConfigError("no constellation given (use preset, constellation or nt)");
}

std::string describe_constellation_source(const KeyValues &kv)
{
    if (const auto p = get(kv, "preset"))
        return "preset " + *p;
    if (const auto f = get(kv, "constellation"))
        return "file " + *f;
    if (get(kv, "nt"))
        return "geometric family nt=" + get(kv, "nt").value() + " bits=" + get(kv, "bits").value_or("2") +
               " ratio=" + get(kv, "ratio").value_or("0.5");
    return "none";
}

unsigned resolve_threads(const KeyValues &kv)
{
    std::uint64_t n = 0;
    if (get(kv, "threads"))
        n = get_uint(kv, "threads", 0);
    else if (const char *env = std::getenv("FDPRECODE_THREADS"); env && *env)
        n = get_uint(KeyValues{{"threads", env}}, "threads", 0);
    else
        n = std::max(1u, std::thread::hardware_concurrency());
    if (n < 1 || n > 1024)
        throw ConfigError("thread count must be in [1, 1024]");
    return static_cast<unsigned>(n);
}

SimConfig build_sim_config(const KeyValues &kv)
{
    SimConfig cfg;
    cfg.constellation = resolve_constellation(kv);
    cfg.nr = get_uint(kv, "nr", 1);
    if (const auto snr = get(kv, "snr"))
        cfg.snr_grid_db = parse_snr_grid(*snr);
    cfg.trials_per_point = get_uint(kv, "trials", 10000);
    cfg.target_errors = get_uint(kv, "target_errors", 0);
    cfg.seed = get_uint(kv, "seed", 1);
    if (const auto s = get(kv, "scheme"))
        cfg.scheme = parse_scheme(*s);
    cfg.noiseless = get_bool(kv, "noiseless", false);
    cfg.threads = resolve_threads(kv);
    return cfg;
}

std::string format_number(double v)
{
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

} // namespace fdprecode::cli
