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

#include "fdprecode/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <iostream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include "cli/config.hpp"
#include "cli/svg.hpp"
#include "fdprecode/constellation.hpp"
#include "fdprecode/error.hpp"
#include "fdprecode/simulator.hpp"

namespace fdprecode
{

namespace
{
using cli::KeyValues;

enum ExitCode : int
{
    exit_ok = 0,
    exit_domain_failure = 1,
    exit_usage = 2,
};

std::string utc_timestamp()
{
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::filesystem::path manifest_path(const std::filesystem::path &out) { return out.string() + ".manifest"; }

std::filesystem::path svg_path(std::filesystem::path out) { return out.replace_extension(".svg"); }

// Keys that fully determine the constellation, copied verbatim into manifests.
void copy_source_keys(const KeyValues &from, KeyValues &to)
{
    for (const char *k : {"preset", "constellation", "nt", "bits", "ratio"})
        if (auto v = cli::get(from, k))
            to[k] = *v;
}

void write_manifest(const std::filesystem::path &path, const std::string &command, KeyValues resolved,
                    const std::vector<std::filesystem::path> &outputs)
{
    resolved["command"] = command;
    resolved["tool_version"] = tool_version;
    resolved["timestamp"] = utc_timestamp();
    std::string joined;
    for (const auto &o : outputs)
        joined += (joined.empty() ? "" : ",") + o.string();
    resolved["outputs"] = joined;

    std::ostringstream os;
    os << "# fdprecode run manifest; rerun with: fdprecode " << command << " --config <this file>\n";
    for (const auto &[k, v] : resolved)
        os << k << " = " << v << '\n';
    cli::write_text_file(path, os.str());
}

std::string format_point(cdouble x)
{
    return "(" + cli::format_number(x.real()) + (x.imag() < 0 ? " - " : " + ") + cli::format_number(std::abs(x.imag())) +
           "j)";
}

std::string join_digits(const std::vector<std::size_t> &d)
{
    std::string s = "(";
    for (std::size_t i = 0; i < d.size(); ++i)
        s += (i ? "," : "") + std::to_string(d[i] + 1);
    return s + ")";
}

int cmd_simulate(const KeyValues &kv, std::ostream &out)
{
    const SimConfig cfg = cli::build_sim_config(kv);
    cfg.validate();
    const bool plot = cli::get_bool(kv, "plot", false);
    const auto out_path = cli::get(kv, "out");
    if (plot && !out_path)
        throw ConfigError("--plot requires --out");

    const CerCurve curve = run_cer_sweep(cfg);

    std::ostringstream csv;
    csv << "snr_db,trials,errors,cer,ci_lo,ci_hi\n";
    for (const auto &p : curve.points)
        csv << cli::format_number(p.snr_db) << ',' << p.trials << ',' << p.errors << ',' << cli::format_number(p.cer)
            << ',' << cli::format_number(p.ci_lo) << ',' << cli::format_number(p.ci_hi) << '\n';

    if (!out_path)
    {
        out << csv.str();
        return exit_ok;
    }

    const std::filesystem::path path(*out_path);
    cli::write_text_file(path, csv.str());
    std::vector<std::filesystem::path> outputs{path};
    const int diversity = static_cast<int>(cfg.nt() * cfg.nr);
    if (plot)
    {
        std::ostringstream title;
        title << cfg.nt() << "x" << cfg.nr << " " << to_string(cfg.scheme) << " ("
              << cli::describe_constellation_source(kv) << ")";
        cli::write_text_file(svg_path(path), cli::cer_plot_svg(curve, diversity, title.str()));
        outputs.push_back(svg_path(path));
    }

    KeyValues resolved;
    copy_source_keys(kv, resolved);
    std::string snr;
    for (double s : cfg.snr_grid_db)
        snr += (snr.empty() ? "" : ",") + cli::format_number(s);
    resolved["snr"] = snr;
    resolved["nr"] = std::to_string(cfg.nr);
    resolved["trials"] = std::to_string(cfg.trials_per_point);
    resolved["target_errors"] = std::to_string(cfg.target_errors);
    resolved["seed"] = std::to_string(cfg.seed);
    resolved["scheme"] = to_string(cfg.scheme);
    resolved["noiseless"] = cfg.noiseless ? "true" : "false";
    resolved["threads"] = std::to_string(cfg.threads);
    resolved["out"] = path.string();
    resolved["plot"] = plot ? "true" : "false";
    write_manifest(manifest_path(path), "simulate", resolved, outputs);

    out << "wrote " << path.string() << " (" << curve.points.size() << " SNR points)\n";
    return exit_ok;
}

int cmd_check_constellation(const KeyValues &kv, std::ostream &out)
{
    const ConstellationSets cs = cli::resolve_constellation(kv);
    const double tol = cli::get_double(kv, "tol", default_distinct_tolerance);
    const DiversityReport report = check_full_diversity(cs, tol);

    out << "constellation: " << cli::describe_constellation_source(kv) << " (nt=" << cs.nt()
        << ", bits=" << cs.bits_per_symbol() << ")\n";
    if (const auto p = cli::get(kv, "preset"))
        if (const auto id = cli::parse_preset_id(*p); id && !preset_verified(id->first, id->second))
            out << "note: preset is unverified; fails under the odd-integer QAM level convention\n";
    out << "verdict: " << (report.passes ? "PASS" : "FAIL") << '\n';
    out << "min_sum_distance: " << cli::format_number(report.min_sum_distance) << '\n';
    out << "average_energy: " << cli::format_number(average_energy(cs)) << '\n';
    out << "codewords: " << cs.codebook_size().value_or(0) << ", pairs_checked: " << report.pairs_checked << '\n';
    if (report.witness)
    {
        const auto [k, l] = *report.witness;
        const CVector xk = cs.codeword(k);
        const CVector xl = cs.codeword(l);
        cdouble sk{};
        cdouble sl{};
        for (std::size_t i = 0; i < cs.nt(); ++i)
        {
            sk += xk[i];
            sl += xl[i];
        }
        out << (report.passes ? "closest pair: " : "witness: ") << "codewords " << k << " " << join_digits(cs.digits(k))
            << " and " << l << " " << join_digits(cs.digits(l)) << ", sums " << format_point(sk) << " and "
            << format_point(sl) << ", |sum dx| = " << cli::format_number(std::abs(sk - sl)) << '\n';
    }
    return report.passes ? exit_ok : exit_domain_failure;
}

int cmd_optimize_constellation(const KeyValues &kv, std::ostream &out)
{
    const ConstellationSets base = cli::resolve_constellation(kv);
    const double budget = cli::get_double(kv, "budget", average_energy(base));
    SearchGrid grid;
    grid.scale_step = cli::get_double(kv, "scale_step", grid.scale_step);
    grid.phase_divisions = static_cast<int>(cli::get_uint(kv, "phase_divisions", 72));
    if (const auto f = cli::get(kv, "free"))
    {
        std::vector<std::size_t> free;
        std::stringstream ss(*f);
        for (std::string tok; std::getline(ss, tok, ',');)
        {
            const auto i = cli::get_uint(KeyValues{{"free", tok}}, "free", 0);
            if (i < 1)
                throw ConfigError("free antennas are 1-based");
            free.push_back(static_cast<std::size_t>(i - 1));
        }
        grid.free_antennas = free;
    }

    const OptimizedSets best = optimize_rotations_scalings(base, grid, budget);

    std::ostringstream summary;
    summary << "min_sum_distance: " << cli::format_number(best.min_sum_distance) << '\n';
    summary << "average_energy: " << cli::format_number(best.average_energy) << " (budget "
            << cli::format_number(budget) << ")\n";
    summary << "candidates_evaluated: " << best.candidates_evaluated << '\n';
    for (std::size_t i = 0; i < best.scales.size(); ++i)
        summary << "antenna " << (i + 1) << ": b = " << cli::format_number(best.scales[i])
                << ", phi = " << cli::format_number(best.phases[i]) << " rad ("
                << cli::format_number(best.phases[i] / std::numbers::pi * 180.0) << " deg)\n";

    const auto out_path = cli::get(kv, "out");
    if (!out_path)
    {
        std::istringstream lines(summary.str());
        for (std::string line; std::getline(lines, line);)
            out << "# " << line << '\n';
        write_constellation(out, best.sets);
        return exit_ok;
    }

    const std::filesystem::path path(*out_path);
    write_constellation(path, best.sets);
    KeyValues resolved;
    copy_source_keys(kv, resolved);
    resolved["budget"] = cli::format_number(budget);
    resolved["scale_step"] = cli::format_number(grid.scale_step);
    resolved["phase_divisions"] = std::to_string(grid.phase_divisions);
    if (const auto f = cli::get(kv, "free"))
        resolved["free"] = *f;
    resolved["out"] = path.string();
    write_manifest(manifest_path(path), "optimize-constellation", resolved, {path});
    out << summary.str() << "wrote " << path.string() << '\n';
    return exit_ok;
}

int cmd_dmin_pdf(const KeyValues &kv, std::ostream &out)
{
    const auto bins = cli::get_uint(kv, "bins", 50);
    if (bins == 0)
        throw ConfigError("--bins must be at least 1");
    const auto count = cli::get_uint(kv, "samples", 100000);
    const SimConfig cfg = cli::build_sim_config(kv);
    const bool plot = cli::get_bool(kv, "plot", false);
    const auto out_path = cli::get(kv, "out");
    if (plot && !out_path)
        throw ConfigError("--plot requires --out");

    const DminSamples samples = sample_dmin_pdf(cfg, count);
    const int dof = static_cast<int>(2 * cfg.nt() * cfg.nr);
    const KsResult ks = ks_test_chisq(samples, dof);

    const double zmax = *std::max_element(samples.z.begin(), samples.z.end());
    const double width = zmax / static_cast<double>(bins);
    std::vector<cli::HistogramBin> hist(bins);
    for (std::size_t b = 0; b < bins; ++b)
    {
        hist[b].lo = width * static_cast<double>(b);
        hist[b].hi = b + 1 == bins ? zmax : width * static_cast<double>(b + 1);
    }
    for (double z : samples.z)
        ++hist[std::min<std::size_t>(bins - 1, static_cast<std::size_t>(z / width))].count;
    std::ostringstream csv;
    csv << "bin_lo,bin_hi,count,density\n";
    for (auto &b : hist)
    {
        b.density = static_cast<double>(b.count) / (static_cast<double>(count) * width);
        csv << cli::format_number(b.lo) << ',' << cli::format_number(b.hi) << ',' << b.count << ','
            << cli::format_number(b.density) << '\n';
    }

    std::ostringstream summary;
    summary << "ks_statistic=" << cli::format_number(ks.statistic) << '\n'
            << "p_value=" << cli::format_number(ks.p_value) << '\n'
            << "dof=" << dof << '\n'
            << "samples=" << count << '\n'
            << "chi_square_match=" << (ks.p_value >= 0.01 ? "yes" : "no") << " (p >= 0.01)\n";

    if (!out_path)
    {
        out << csv.str() << summary.str();
        return exit_ok;
    }
    const std::filesystem::path path(*out_path);
    cli::write_text_file(path, csv.str());
    std::vector<std::filesystem::path> outputs{path};
    if (plot)
    {
        std::ostringstream title;
        title << "normalized d2min, " << cfg.nt() << "x" << cfg.nr;
        cli::write_text_file(svg_path(path), cli::dmin_pdf_svg(hist, dof, title.str()));
        outputs.push_back(svg_path(path));
    }
    KeyValues resolved;
    copy_source_keys(kv, resolved);
    resolved["nr"] = std::to_string(cfg.nr);
    resolved["samples"] = std::to_string(count);
    resolved["bins"] = std::to_string(bins);
    resolved["seed"] = std::to_string(cfg.seed);
    resolved["threads"] = std::to_string(cfg.threads);
    resolved["out"] = path.string();
    resolved["plot"] = plot ? "true" : "false";
    write_manifest(manifest_path(path), "dmin-pdf", resolved, outputs);
    out << summary.str() << "wrote " << path.string() << '\n';
    return exit_ok;
}

// Registers `--flag VALUE` as an override of config key `key`.
void add_key_option(CLI::App *sub, KeyValues &ov, const std::string &flag, const std::string &key,
                    const std::string &help)
{
    sub->add_option_function<std::string>(flag, [&ov, key](const std::string &v) { ov[key] = v; }, help);
}

// Positional "file-or-preset": NTxBITS selects a preset, anything else is a path.
void add_source_positional(CLI::App *sub, KeyValues &ov)
{
    sub->add_option_function<std::string>(
        "source",
        [&ov](const std::string &v) {
            if (cli::parse_preset_id(v))
                ov["preset"] = v;
            else
                ov["constellation"] = v;
        },
        "Preset id (NTxBITS) or constellation file");
}
} // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    CLI::App app{"fdprecode: full-rate full-diversity MIMO precoding with n_t-1 feedback angles"};
    app.require_subcommand(1);
    app.set_version_flag("--version", tool_version);

    KeyValues ov;
    std::string config_path;

    auto *simulate = app.add_subcommand("simulate", "CER-vs-SNR Monte Carlo sweep, CSV output");
    auto *check = app.add_subcommand("check-constellation", "Exhaustive full-diversity check");
    auto *optimize = app.add_subcommand("optimize-constellation", "Grid search over per-set rotation and scaling");
    auto *dmin = app.add_subcommand("dmin-pdf", "Normalized d2min histogram and chi-square KS test");

    for (auto *sub : {simulate, check, optimize, dmin})
    {
        sub->add_option("--config", config_path, "Flat key = value configuration file");
        add_key_option(sub, ov, "--preset", "preset", "Table preset NTxBITS, e.g. 3x1");
        add_key_option(sub, ov, "--constellation", "constellation", "Constellation file");
        add_key_option(sub, ov, "--out", "out", "Output path");
    }
    for (auto *sub : {simulate, dmin})
    {
        add_key_option(sub, ov, "--nt", "nt", "Antennas for the geometric QAM family");
        add_key_option(sub, ov, "--bits", "bits", "Bits/symbol for the geometric QAM family");
        add_key_option(sub, ov, "--nr", "nr", "Receive antennas");
        add_key_option(sub, ov, "--seed", "seed", "64-bit seed");
        add_key_option(sub, ov, "--threads", "threads", "Worker threads (fallback: FDPRECODE_THREADS)");
        sub->add_flag_function("--plot", [&ov](std::int64_t) { ov["plot"] = "true"; }, "Also write an SVG plot");
    }
    add_key_option(simulate, ov, "--snr", "snr", "SNR grid A:B:STEP or comma list (dB)");
    add_key_option(simulate, ov, "--trials", "trials", "Trials per SNR point (cap when --target-errors is set)");
    add_key_option(simulate, ov, "--target-errors", "target_errors", "Stop a point after this many errors");
    add_key_option(simulate, ov, "--scheme", "scheme", "proposed | unprecoded_vblast");
    simulate->add_flag_function("--noiseless", [&ov](std::int64_t) { ov["noiseless"] = "true"; }, "Disable noise");
    add_key_option(dmin, ov, "--samples", "samples", "Channel draws");
    add_key_option(dmin, ov, "--bins", "bins", "Histogram bins");
    add_key_option(check, ov, "--tol", "tol", "Distinctness tolerance on |sum dx|");
    add_source_positional(check, ov);
    add_source_positional(optimize, ov);
    add_key_option(optimize, ov, "--budget", "budget", "Average energy budget (default: base energy)");
    add_key_option(optimize, ov, "--scale-step", "scale_step", "Scale grid step over (0, 1]");
    add_key_option(optimize, ov, "--phase-divisions", "phase_divisions", "Phase grid points over [0, 2pi)");
    add_key_option(optimize, ov, "--free", "free", "Comma list of 1-based antennas to search (default 2..nt)");

    std::vector<const char *> argv;
    for (const auto &a : args)
        argv.push_back(a.c_str());
    try
    {
        app.parse(static_cast<int>(argv.size()), argv.data());
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    try
    {
        KeyValues kv = config_path.empty() ? KeyValues{} : cli::read_config_file(config_path);
        kv = cli::merge(std::move(kv), ov);
        if (simulate->parsed())
            return cmd_simulate(kv, out);
        if (check->parsed())
            return cmd_check_constellation(kv, out);
        if (optimize->parsed())
            return cmd_optimize_constellation(kv, out);
        return cmd_dmin_pdf(kv, out);
    }
    catch (const InfeasibleError &e)
    {
        err << "error: " << e.what() << '\n';
        return exit_domain_failure;
    }
    catch (const std::exception &e)
    {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
}

} // namespace fdprecode
