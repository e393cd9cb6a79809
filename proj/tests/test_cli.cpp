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

#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

#include "fdprecode/cli.hpp"
#include "fdprecode/constellation.hpp"
#include "test_util.hpp"

using namespace fdprecode;
using Catch::Approx;
using Catch::Matchers::ContainsSubstring;

namespace
{
struct Run
{
    int code = -1;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args)
{
    args.insert(args.begin(), "fdprecode");
    std::ostringstream out;
    std::ostringstream err;
    Run r;
    r.code = run_cli(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string slurp(const std::filesystem::path &p)
{
    std::ifstream is(p, std::ios::binary);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

void spit(const std::filesystem::path &p, const std::string &text)
{
    std::ofstream(p, std::ios::binary) << text;
}

std::vector<std::string> lines(const std::string &text)
{
    std::vector<std::string> v;
    std::istringstream is(text);
    for (std::string l; std::getline(is, l);)
        v.push_back(l);
    return v;
}

// Value after "key=" (or after a key ending in a space) at line start.
double summary_value(const std::string &text, const std::string &key)
{
    for (const auto &l : lines(text))
    {
        const std::string prefix = key.back() == ' ' ? key : key + "=";
        if (l.rfind(prefix, 0) == 0)
            return std::stod(l.substr(prefix.size()));
    }
    FAIL("missing summary key " << key);
    return 0.0;
}
} // namespace

TEST_CASE("simulate emits the six-column CSV")
{
    const Run r = run({"simulate", "--preset", "3x1", "--snr", "0:10:5", "--trials", "2000", "--threads", "1"});
    REQUIRE(r.code == 0);
    const auto l = lines(r.out);
    REQUIRE(l.size() == 4);
    CHECK(l[0] == "snr_db,trials,errors,cer,ci_lo,ci_hi");
    for (std::size_t i = 1; i < l.size(); ++i)
        CHECK(std::count(l[i].begin(), l[i].end(), ',') == 5);
    CHECK(l[1].rfind("0,2000,", 0) == 0);
    CHECK(l[3].rfind("10,2000,", 0) == 0);
}

TEST_CASE("simulate rerun from its manifest is byte-identical")
{
    test::TempDir dir("manifest");
    const auto a = dir / "a.csv";
    const auto b = dir / "b.csv";
    REQUIRE(run({"simulate", "--preset", "3x1", "--snr", "4:12:4", "--trials", "3000", "--seed", "99", "--threads", "1",
                 "--out", a.string()})
                .code == 0);
    const std::string manifest = slurp(a.string() + ".manifest");
    CHECK_THAT(manifest, ContainsSubstring("seed = 99"));
    CHECK_THAT(manifest, ContainsSubstring("tool_version = "));
    CHECK_THAT(manifest, ContainsSubstring("timestamp = "));
    CHECK_THAT(manifest, ContainsSubstring("snr = 4,8,12"));

    REQUIRE(run({"simulate", "--config", a.string() + ".manifest", "--out", b.string(), "--threads", "8"}).code == 0);
    CHECK(slurp(a) == slurp(b));
}

TEST_CASE("config file values are overridden by flags")
{
    test::TempDir dir("override");
    const auto cfg = dir / "run.cfg";
    spit(cfg, "# sweep\npreset = 4x1\nsnr = 0,5\ntrials = 1024\nthreads = 1\n");
    const Run base = run({"simulate", "--config", cfg.string()});
    REQUIRE(base.code == 0);
    CHECK(lines(base.out).size() == 3);
    const Run over = run({"simulate", "--config", cfg.string(), "--snr", "1"});
    REQUIRE(over.code == 0);
    CHECK(lines(over.out).size() == 2);
    CHECK(lines(over.out)[1].rfind("1,1024,", 0) == 0);

    spit(cfg, "presett = 4x1\n");
    const Run bad = run({"simulate", "--config", cfg.string()});
    CHECK(bad.code == 2);
    CHECK_THAT(bad.err, ContainsSubstring("presett"));
}

TEST_CASE("missing inputs are usage errors naming the path")
{
    const Run r = run({"simulate", "--constellation", "/nonexistent/sets.txt", "--snr", "0", "--threads", "1"});
    CHECK(r.code == 2);
    CHECK_THAT(r.err, ContainsSubstring("/nonexistent/sets.txt"));
    const Run c = run({"simulate", "--config", "/nonexistent/run.cfg"});
    CHECK(c.code == 2);
    CHECK_THAT(c.err, ContainsSubstring("/nonexistent/run.cfg"));
    CHECK(run({"simulate", "--bogus"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"simulate", "--preset", "3x1", "--snr", "0", "--plot"}).code == 2);
}

TEST_CASE("check-constellation verdicts and exit codes")
{
    const Run pass = run({"check-constellation", "3x1"});
    CHECK(pass.code == 0);
    CHECK_THAT(pass.out, ContainsSubstring("verdict: PASS"));
    CHECK(summary_value(pass.out, "min_sum_distance: ") == Approx(1.35).epsilon(1e-14));
    CHECK_THAT(pass.out, ContainsSubstring("average_energy: 2.455625"));

    const Run fail = run({"check-constellation", "--preset", "3x4"});
    CHECK(fail.code == 1);
    CHECK_THAT(fail.out, ContainsSubstring("verdict: FAIL"));
    CHECK_THAT(fail.out, ContainsSubstring("witness: codewords"));

    test::TempDir dir("check");
    const auto bad = dir / "bad.txt";
    spit(bad, "1 1\n1 1 0\n");
    CHECK(run({"check-constellation", bad.string()}).code == 2);

    const auto cancel = dir / "cancel.txt";
    spit(cancel, "2 1\n1 -1 0\n1 1 0\n2 -1 0\n2 1 0\n");
    const Run c = run({"check-constellation", cancel.string()});
    CHECK(c.code == 1);
    CHECK_THAT(c.out, ContainsSubstring("min_sum_distance: 0"));
}

TEST_CASE("optimize-constellation output round-trips through the checker")
{
    test::TempDir dir("opt");
    const auto base = dir / "base.txt";
    spit(base, "3 1\n1 -1 0\n1 1 0\n2 0 -1\n2 0 1\n3 -1 0\n3 1 0\n");
    const auto out = dir / "opt.txt";
    const Run r = run({"optimize-constellation", base.string(), "--budget", "2.455625", "--free", "3", "--out",
                       out.string()});
    REQUIRE(r.code == 0);
    CHECK(std::filesystem::exists(out.string() + ".manifest"));

    const ConstellationSets cs = read_constellation(out);
    const cdouble target = std::polar(0.675, std::numbers::pi / 4);
    const double step = std::abs(target - std::polar(0.7, std::numbers::pi / 4 + std::numbers::pi / 36));
    const bool near = std::abs(cs.set(2)[1] - target) <= step || std::abs(cs.set(2)[0] - target) <= step;
    CHECK(near);

    const Run check = run({"check-constellation", out.string()});
    CHECK(check.code == 0);
    CHECK_THAT(check.out, ContainsSubstring("verdict: PASS"));

    const Run stdout_run = run({"optimize-constellation", base.string(), "--budget", "2.455625", "--free", "3",
                                "--phase-divisions", "8", "--scale-step", "0.25"});
    REQUIRE(stdout_run.code == 0);
    std::istringstream body(stdout_run.out);
    CHECK(read_constellation(body).nt() == 3);

    const Run infeasible = run({"optimize-constellation", base.string(), "--budget", "1.0"});
    CHECK(infeasible.code == 1);
    CHECK_THAT(infeasible.err, ContainsSubstring("error:"));
}

TEST_CASE("dmin-pdf histogram and KS summary")
{
    const Run r = run({"dmin-pdf", "--preset", "4x1", "--samples", "100000", "--bins", "40", "--threads", "1"});
    REQUIRE(r.code == 0);
    const auto l = lines(r.out);
    CHECK(l[0] == "bin_lo,bin_hi,count,density");
    std::uint64_t total = 0;
    for (std::size_t i = 1; i <= 40; ++i)
    {
        std::istringstream row(l[i]);
        std::string lo, hi, count;
        std::getline(row, lo, ',');
        std::getline(row, hi, ',');
        std::getline(row, count, ',');
        total += std::stoull(count);
    }
    CHECK(total == 100000);
    CHECK(summary_value(r.out, "dof") == 8);
    CHECK(summary_value(r.out, "p_value") >= 0.01);

    test::TempDir dir("dmin");
    const auto cfg = dir / "one.txt";
    spit(cfg, "1 1\n1 -1 0\n1 1 0\n");
    const Run one = run({"dmin-pdf", "--constellation", cfg.string(), "--threads", "1"});
    REQUIRE(one.code == 0);
    CHECK(summary_value(one.out, "dof") == 2);
    CHECK(summary_value(one.out, "p_value") >= 0.01);

    CHECK(run({"dmin-pdf", "--preset", "4x1", "--bins", "0"}).code == 2);
}

TEST_CASE("FDPRECODE_THREADS is the fallback worker count")
{
    test::TempDir dir("env");
    const auto out = dir / "r.csv";
    ::setenv("FDPRECODE_THREADS", "3", 1);
    REQUIRE(run({"simulate", "--preset", "3x1", "--snr", "0", "--trials", "100", "--out", out.string()}).code == 0);
    CHECK_THAT(slurp(out.string() + ".manifest"), ContainsSubstring("threads = 3"));
    REQUIRE(run({"simulate", "--preset", "3x1", "--snr", "0", "--trials", "100", "--threads", "2", "--out",
                 out.string()})
                .code == 0);
    CHECK_THAT(slurp(out.string() + ".manifest"), ContainsSubstring("threads = 2"));
    ::setenv("FDPRECODE_THREADS", "zero", 1);
    CHECK(run({"simulate", "--preset", "3x1", "--snr", "0", "--trials", "100"}).code == 2);
    ::unsetenv("FDPRECODE_THREADS");
}

TEST_CASE("--plot writes an SVG and leaves the CSV unchanged")
{
    test::TempDir dir("plot");
    const auto a = dir / "a.csv";
    const auto b = dir / "b.csv";
    const std::vector<std::string> common{"simulate", "--preset", "3x1", "--snr", "0:20:5", "--trials", "4096",
                                          "--threads", "1"};
    auto with_a = common;
    with_a.insert(with_a.end(), {"--out", a.string()});
    auto with_b = common;
    with_b.insert(with_b.end(), {"--out", b.string(), "--plot"});
    REQUIRE(run(with_a).code == 0);
    REQUIRE(run(with_b).code == 0);
    CHECK(slurp(a) == slurp(b));
    const std::string svg = slurp(dir / "b.svg");
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK_THAT(svg, ContainsSubstring("</svg>"));
    CHECK_FALSE(std::filesystem::exists(dir / "a.svg"));

    const auto h = dir / "h.csv";
    REQUIRE(run({"dmin-pdf", "--preset", "3x1", "--samples", "2000", "--threads", "1", "--plot", "--out", h.string()})
                .code == 0);
    CHECK(std::filesystem::exists(dir / "h.svg"));
}
