// Copyright 2026 The ddlrd Authors
// SPDX-License-Identifier: Apache-2.0

#include "ddlrd/generators.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

namespace ddlrd {

TaqquLevyModel::TaqquLevyModel(const ModelParams& p, NoiseDist reward_dist)
    : params(p),
      s0(s0_curve(AcvSequence(p, 1))),
      interarrival(interarrival_curve(AcvSequence(p, 1))),
      rewards(reward_dist)
{
}

ParkeModel::ParkeModel(const ModelParams& p, NoiseDist shock_dist, std::int64_t j_truncation)
    : params(p),
      durations(parke_curve(p)),
      j_pmf(j_distribution(p, j_truncation)),
      j_curve(pmf_curve(j_pmf)),
      shocks(shock_dist)
{
}

std::uint64_t attempt_seed(std::uint64_t seed, std::uint64_t attempt)
{
    return substream_seed(seed, 0, StreamRole::path, attempt);
}

namespace {

void validate_length(std::int64_t n)
{
    if (n < 2) {
        throw std::invalid_argument("sample path length must be at least 2");
    }
}

// One attempt; returns false when the window holds a single regime.
bool try_taqqu_levy(const TaqquLevyModel& model, std::int64_t n, Rng& rng, SamplePath& path)
{
    const double sigma_w = std::sqrt(model.params.sigma_w_sq);
    path.values.assign(static_cast<std::size_t>(n), 0.0);
    path.meta.change_points.clear();

    std::int64_t pos = model.s0.sample(rng, n);  // anything past n is one regime
    const double w0 = sigma_w * model.rewards.draw(rng);
    std::fill_n(path.values.begin(), std::min(pos, n), w0);
    while (pos < n) {
        const double w = sigma_w * model.rewards.draw(rng);
        const std::int64_t duration = model.interarrival.sample(rng, n);
        const std::int64_t end = std::min(pos + duration, n);
        std::fill(path.values.begin() + pos, path.values.begin() + end, w);
        if (pos >= 1) {
            path.meta.change_points.push_back(pos);
        }
        pos += duration;
    }
    path.meta.regime_count = static_cast<std::int64_t>(path.meta.change_points.size());
    return path.meta.regime_count > 0;
}

}  // namespace

SamplePath generate_taqqu_levy(const TaqquLevyModel& model, std::int64_t n, std::uint64_t seed)
{
    validate_length(n);
    SamplePath path;
    path.kind = ProcessKind::taqqu_levy;
    path.seed = seed;
    for (std::int64_t attempt = 0; attempt <= model.max_discards; ++attempt) {
        Rng rng = make_rng(attempt_seed(seed, static_cast<std::uint64_t>(attempt)));
        if (try_taqqu_levy(model, n, rng, path)) {
            path.meta.discard_count = attempt;
            return path;
        }
    }
    throw GenerationError("Taqqu-Levy generator: discard budget exhausted (" +
                          std::to_string(model.max_discards) + " constant realizations)");
}

SamplePath generate_taqqu_levy(const ModelParams& params, std::int64_t n, std::uint64_t seed)
{
    return generate_taqqu_levy(TaqquLevyModel(params), n, seed);
}

SamplePath generate_parke(const ParkeModel& model,
                          std::int64_t n,
                          std::uint64_t seed,
                          ParkeTrace* trace)
{
    validate_length(n);
    Rng rng = make_rng(attempt_seed(seed, 0));
    const double sigma_eps = std::sqrt(model.params.sigma_eps_sq);

    SamplePath path;
    path.kind = ProcessKind::parke;
    path.seed = seed;
    path.values.resize(static_cast<std::size_t>(n));

    // Shocks whose death time (first t at which they are gone) falls inside
    // the window; later deaths never touch the emitted values.
    std::vector<double> dying_sum(static_cast<std::size_t>(n), 0.0);
    std::vector<std::int64_t> dying_count(static_cast<std::size_t>(n), 0);
    if (trace != nullptr) {
        trace->shocks.clear();
    }

    const std::int64_t j = model.force_zero_durations ? 0 : model.j_curve.sample(rng);
    path.meta.j = j;
    const SurvivalCurve oldest = model.durations.conditional(j);

    double x = 0.0;
    std::int64_t live = 0;
    auto schedule = [&](std::int64_t s, std::int64_t duration, double eps) {
        const std::int64_t death = s + duration + 1;
        if (death < n) {
            dying_sum[static_cast<std::size_t>(death)] += eps;
            ++dying_count[static_cast<std::size_t>(death)];
        }
        if (trace != nullptr) {
            trace->shocks.push_back({s, duration, eps});
        }
    };

    for (std::int64_t s = -j; s < 0; ++s) {
        const double eps = sigma_eps * model.shocks.draw(rng);
        const std::int64_t duration =
            s == -j ? oldest.sample(rng) : model.durations.sample(rng);
        if (s + duration >= 0) {
            x += eps;
            ++live;
            schedule(s, duration, eps);
        }
    }

    std::int64_t high_water = live;
    for (std::int64_t t = 0; t < n; ++t) {
        const double eps = sigma_eps * model.shocks.draw(rng);
        std::int64_t duration = 0;
        if (!model.force_zero_durations) {
            duration = t == -j ? oldest.sample(rng) : model.durations.sample(rng);
        }
        const auto ti = static_cast<std::size_t>(t);
        x += eps - dying_sum[ti];
        live += 1 - dying_count[ti];
        high_water = std::max(high_water, live);
        schedule(t, duration, eps);
        path.values[ti] = x;
    }
    path.meta.live_high_water = high_water;
    return path;
}

SamplePath generate_parke(const ModelParams& params, std::int64_t n, std::uint64_t seed)
{
    return generate_parke(ParkeModel(params), n, seed);
}

double parke_direct_sum(const ParkeTrace& trace, std::int64_t t)
{
    double sum = 0.0;
    for (const auto& shock : trace.shocks) {
        if (shock.time <= t && t <= shock.time + shock.duration) {
            sum += shock.value;
        }
    }
    return sum;
}

void write_path_csv(std::ostream& out, const SamplePath& path, const ModelParams& params)
{
    out << "# process=" << to_string(path.kind) << '\n'
        << "# d=" << std::setprecision(17) << params.d << '\n'
        << "# n=" << path.values.size() << '\n'
        << "# seed=" << path.seed << '\n';
    if (path.kind == ProcessKind::taqqu_levy) {
        out << "# regime_count=" << path.meta.regime_count << '\n'
            << "# discard_count=" << path.meta.discard_count << '\n';
    } else {
        out << "# j=" << path.meta.j << '\n'
            << "# live_high_water=" << path.meta.live_high_water << '\n';
    }
    out << "value\n";
    for (double v : path.values) {
        out << std::setprecision(17) << v << '\n';
    }
}

}  // namespace ddlrd
