// Copyright 2026 The ddlrd Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DDLRD_GENERATORS_HPP
#define DDLRD_GENERATORS_HPP

#include "ddlrd/arfima_model.hpp"
#include "ddlrd/heavy_tail_dist.hpp"
#include "ddlrd/noise.hpp"
#include "ddlrd/rng.hpp"

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <vector>

namespace ddlrd {

struct PathMeta {
    // Taqqu-Levy
    std::int64_t regime_count = 0;   // regime changes inside the window
    std::int64_t discard_count = 0;  // constant realizations thrown away
    std::vector<std::int64_t> change_points;
    // Parke
    std::int64_t j = 0;                // age of the oldest shock alive at t = 0
    std::int64_t live_high_water = 0;  // most shocks alive at once
};

struct SamplePath {
    std::vector<double> values;  // X_0 .. X_{n-1}
    ProcessKind kind = ProcessKind::taqqu_levy;
    std::uint64_t seed = 0;
    PathMeta meta;

    std::size_t size() const { return values.size(); }
};

/// Raised when a generator cannot produce a usable path within its budget.
class GenerationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Prepared Taqqu-Levy sampler: survival curves are built once and shared.
struct TaqquLevyModel {
    ModelParams params;
    SurvivalCurve s0;
    SurvivalCurve interarrival;
    NoiseDist rewards;
    std::int64_t max_discards = 10000;

    explicit TaqquLevyModel(const ModelParams& params, NoiseDist rewards = NoiseDist::gaussian());
};

/// Prepared Parke sampler.
struct ParkeModel {
    ModelParams params;
    SurvivalCurve durations;
    TruncatedPmf j_pmf;
    SurvivalCurve j_curve;
    NoiseDist shocks;
    bool force_zero_durations = false;  // test hook: X_t = eps_t

    explicit ParkeModel(const ModelParams& params,
                        NoiseDist shocks = NoiseDist::gaussian(),
                        std::int64_t j_truncation = default_j_truncation);
};

/// Shock-level record of a Parke path, for reconstruction checks.
struct ParkeTrace {
    struct Shock {
        std::int64_t time;
        std::int64_t duration;  // alive on [time, time + duration]
        double value;
    };
    std::vector<Shock> shocks;
};

/// Seed of generation attempt `attempt` within a path seed.
std::uint64_t attempt_seed(std::uint64_t seed, std::uint64_t attempt);

/// Taqqu-Levy path of length n. Constant realizations are discarded and
/// regenerated from a fresh substream; the count is in meta.discard_count.
SamplePath generate_taqqu_levy(const TaqquLevyModel& model, std::int64_t n, std::uint64_t seed);
SamplePath generate_taqqu_levy(const ModelParams& params, std::int64_t n, std::uint64_t seed);

/// Parke path of length n built by the running-sum recursion.
SamplePath generate_parke(const ParkeModel& model,
                          std::int64_t n,
                          std::uint64_t seed,
                          ParkeTrace* trace = nullptr);
SamplePath generate_parke(const ModelParams& params, std::int64_t n, std::uint64_t seed);

/// X_t = sum of shocks alive at t, evaluated from scratch.
double parke_direct_sum(const ParkeTrace& trace, std::int64_t t);

/// One value per line after '#'-prefixed metadata lines.
void write_path_csv(std::ostream& out, const SamplePath& path, const ModelParams& params);

}  // namespace ddlrd

#endif
