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

#include "fdprecode/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <thread>

#include "fdprecode/channel.hpp"
#include "fdprecode/detector.hpp"
#include "fdprecode/error.hpp"
#include "fdprecode/precoder.hpp"
#include "fdprecode/rng.hpp"

namespace fdprecode
{

std::string to_string(Scheme s)
{
    return s == Scheme::proposed ? "proposed" : "unprecoded_vblast";
}

Scheme parse_scheme(const std::string &s)
{
    if (s == "proposed")
        return Scheme::proposed;
    if (s == "unprecoded_vblast" || s == "vblast")
        return Scheme::unprecoded_vblast;
    throw ConfigError("unknown scheme '" + s + "' (expected proposed or unprecoded_vblast)");
}

void SimConfig::validate() const
{
    if (!constellation)
        throw ConfigError("no constellation configured");
    if (nr < 1)
        throw ConfigError("nr must be at least 1");
    if (snr_grid_db.empty())
        throw ConfigError("SNR grid is empty");
    for (std::size_t i = 0; i < snr_grid_db.size(); ++i)
    {
        if (!std::isfinite(snr_grid_db[i]))
            throw ConfigError("SNR grid values must be finite");
        if (i > 0 && !(snr_grid_db[i] > snr_grid_db[i - 1]))
            throw ConfigError("SNR grid must be strictly increasing");
    }
    if (trials_per_point < 1)
        throw ConfigError("trials per point must be at least 1");
    if (threads < 1)
        throw ConfigError("thread count must be at least 1");
}

namespace
{
// Runs task(i) for i in [0, n) on up to `threads` workers.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)> &task)
{
    const auto workers = static_cast<std::size_t>(std::min<std::size_t>(threads, n));
    if (workers <= 1)
    {
        for (std::size_t i = 0; i < n; ++i)
            task(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++)
                task(i);
        });
}

// Precoded channel seen by the sum symbol; n_t = 1 needs no feedback.
CVector precoded_channel(const ChannelMatrix &H)
{
    if (H.nt() == 1)
        return effective_channel(H, build_precoder(FeedbackAngles({0.0})));
    return effective_channel(H, build_precoder(compute_feedback_angles(H)));
}

class TrialRunner
{
public:
    explicit TrialRunner(const SimConfig &cfg) : cfg_(cfg), cs_(*cfg.constellation)
    {
        const auto n = cs_.codebook_size();
        if (!n)
            throw InfeasibleError("codebook too large to simulate");
        codebook_size_ = *n;
        if (cfg.scheme == Scheme::proposed)
            fast_.emplace(sum_constellation(cs_));
        else
            vblast_.emplace(cs_);
        energy_ = average_energy(cs_);
    }

    double noise_variance(double snr_db) const
    {
        const double snr = std::pow(10.0, snr_db / 10.0);
        const double scale = cfg_.scheme == Scheme::proposed ? static_cast<double>(cs_.nt()) : 1.0;
        return scale * energy_ / snr;
    }

    // True when the trial is decoded in error.
    bool run(std::uint32_t point, std::uint64_t trial, double sigma2) const
    {
        RandomStream stream(cfg_.seed, substream::cer_trial + point, trial);
        const ChannelMatrix H = sample_channel(cs_.nt(), cfg_.nr, stream);
        const std::uint64_t k = stream.uniform_index(codebook_size_);

        CVector y;
        CVector h_eff;
        if (fast_)
        {
            h_eff = precoded_channel(H);
            const cdouble s = fast_->sums().points[k];
            y.resize(h_eff.size());
            for (std::size_t o = 0; o < y.size(); ++o)
                y[o] = h_eff[o] * s;
        }
        else
        {
            y = H.apply(cs_.codeword(k));
        }
        if (!cfg_.noiseless)
        {
            const NoiseVector n = sample_noise(cfg_.nr, sigma2, stream);
            for (std::size_t o = 0; o < y.size(); ++o)
                y[o] += n.n[o];
        }
        const std::uint64_t decided = fast_ ? fast_->decode(y, h_eff) : vblast_->decode(y, H);
        return decided != k;
    }

private:
    const SimConfig &cfg_;
    const ConstellationSets &cs_;
    std::uint64_t codebook_size_ = 0;
    double energy_ = 0.0;
    std::optional<SumConstellationDecoder> fast_;
    std::optional<VBlastMlDecoder> vblast_;
};

// Batches evaluated between stopping-rule checks; fixed so the stop point
// does not depend on the worker count.
constexpr std::size_t batches_per_round = 64;
} // namespace

CerCurve run_cer_sweep(const SimConfig &cfg)
{
    cfg.validate();
    const TrialRunner runner(cfg);

    CerCurve curve;
    for (std::size_t p = 0; p < cfg.snr_grid_db.size(); ++p)
    {
        const double sigma2 = runner.noise_variance(cfg.snr_grid_db[p]);
        const std::uint64_t total = cfg.trials_per_point;
        const std::uint64_t n_batches = (total + trials_per_batch - 1) / trials_per_batch;

        std::uint64_t trials = 0;
        std::uint64_t errors = 0;
        bool stop = false;
        for (std::uint64_t first = 0; first < n_batches && !stop; first += batches_per_round)
        {
            const std::uint64_t count = std::min<std::uint64_t>(batches_per_round, n_batches - first);
            std::vector<std::uint64_t> batch_errors(count, 0);
            parallel_for(count, cfg.threads, [&](std::size_t b) {
                const std::uint64_t begin = (first + b) * trials_per_batch;
                const std::uint64_t end = std::min(total, begin + trials_per_batch);
                std::uint64_t e = 0;
                for (std::uint64_t t = begin; t < end; ++t)
                    e += runner.run(static_cast<std::uint32_t>(p), t, sigma2) ? 1 : 0;
                batch_errors[b] = e;
            });
            for (std::uint64_t b = 0; b < count; ++b)
            {
                const std::uint64_t begin = (first + b) * trials_per_batch;
                trials += std::min(total, begin + trials_per_batch) - begin;
                errors += batch_errors[b];
                if (cfg.target_errors > 0 && errors >= cfg.target_errors)
                {
                    stop = true;
                    break;
                }
            }
        }

        CerPoint pt;
        pt.snr_db = cfg.snr_grid_db[p];
        pt.trials = trials;
        pt.errors = errors;
        pt.cer = static_cast<double>(errors) / static_cast<double>(trials);
        const WilsonInterval ci = wilson_interval(errors, trials);
        pt.ci_lo = ci.lo;
        pt.ci_hi = ci.hi;
        curve.points.push_back(pt);
    }
    return curve;
}

DminSamples sample_dmin_pdf(const SimConfig &cfg, std::size_t count)
{
    if (!cfg.constellation)
        throw ConfigError("no constellation configured");
    if (cfg.nr < 1)
        throw ConfigError("nr must be at least 1");
    if (cfg.scheme != Scheme::proposed)
        throw ConfigError("d2min sampling is defined for the proposed scheme only");
    if (cfg.threads < 1)
        throw ConfigError("thread count must be at least 1");

    DminSamples out;
    out.nt = cfg.nt();
    out.nr = cfg.nr;
    out.z.resize(count);
    const std::size_t n_batches = (count + trials_per_batch - 1) / trials_per_batch;
    parallel_for(n_batches, cfg.threads, [&](std::size_t b) {
        const std::size_t end = std::min<std::size_t>(count, (b + 1) * trials_per_batch);
        for (std::size_t t = b * trials_per_batch; t < end; ++t)
        {
            RandomStream stream(cfg.seed, substream::dmin_sample, t);
            const ChannelMatrix H = sample_channel(out.nt, out.nr, stream);
            out.z[t] = 2.0 * squared_norm(precoded_channel(H));
        }
    });
    return out;
}

KsResult ks_test_chisq(const DminSamples &samples, int dof)
{
    if (dof <= 0 || dof % 2 != 0)
        throw ConfigError("chi-square degrees of freedom must be even and positive, got " + std::to_string(dof));
    if (samples.count() < 100)
        throw ConfigError("KS test needs at least 100 samples, got " + std::to_string(samples.count()));
    return ks_test(samples.z, [dof](double x) { return chi_square_cdf(x, dof); });
}

double estimate_diversity_slope(const CerCurve &curve, double cer_lo, double cer_hi, std::uint64_t min_errors)
{
    if (!(cer_lo > 0.0 && cer_lo < cer_hi))
        throw ConfigError("CER window must satisfy 0 < lo < hi");
    std::vector<double> xs;
    std::vector<double> ys;
    for (const CerPoint &p : curve.points)
    {
        if (p.errors < min_errors || p.cer < cer_lo || p.cer > cer_hi)
            continue;
        xs.push_back(p.snr_db / 10.0);
        ys.push_back(-std::log10(p.cer));
    }
    if (xs.size() < 2)
        throw InfeasibleError("slope estimate needs at least 2 points inside the CER window with >= " +
                              std::to_string(min_errors) + " errors, found " + std::to_string(xs.size()));

    const double n = static_cast<double>(xs.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i)
    {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i)
    {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    return sxy / sxx;
}

} // namespace fdprecode
