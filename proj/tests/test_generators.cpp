#include "doctest.h"

#include "ddlrd/generators.hpp"

#include <stdexcept>
#include <cmath>
#include <sstream>
#include <string>

using namespace ddlrd;

namespace {

ModelParams tl(double d) { return convert_params(d, ProcessKind::taqqu_levy); }
ModelParams pk(double d) { return convert_params(d, ProcessKind::parke); }

struct Moments {
    double mean = 0.0;
    double se = 0.0;
};

template <class F>
Moments mc(int reps, F&& f)
{
    double s = 0.0;
    double s2 = 0.0;
    for (int r = 0; r < reps; ++r) {
        const double v = f(r);
        s += v;
        s2 += v * v;
    }
    Moments m;
    m.mean = s / reps;
    m.se = std::sqrt((s2 / reps - m.mean * m.mean) / reps);
    return m;
}

}  // namespace

TEST_CASE("paths are deterministic in the seed")
{
    const TaqquLevyModel t(tl(0.3));
    CHECK(generate_taqqu_levy(t, 500, 7).values == generate_taqqu_levy(t, 500, 7).values);
    CHECK(generate_taqqu_levy(t, 500, 7).values != generate_taqqu_levy(t, 500, 8).values);
    const ParkeModel p(pk(0.3));
    CHECK(generate_parke(p, 500, 7).values == generate_parke(p, 500, 7).values);
    CHECK(generate_parke(p, 500, 7).values != generate_parke(p, 500, 8).values);
}

TEST_CASE("Taqqu-Levy paths are piecewise constant between change points")
{
    const TaqquLevyModel t(tl(0.2));
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const SamplePath p = generate_taqqu_levy(t, 2000, seed);
        CHECK(p.meta.regime_count == static_cast<std::int64_t>(p.meta.change_points.size()));
        CHECK(p.meta.regime_count >= 1);
        std::size_t next = 0;
        for (std::int64_t i = 1; i < 2000; ++i) {
            const bool is_cp = next < p.meta.change_points.size() && p.meta.change_points[next] == i;
            if (is_cp) {
                ++next;
            } else {
                CHECK(p.values[static_cast<std::size_t>(i)] == p.values[static_cast<std::size_t>(i - 1)]);
            }
        }
        CHECK(next == p.meta.change_points.size());
    }
}

TEST_CASE("Taqqu-Levy constant-path probability is gamma(n-1)/gamma(0)")
{
    // d=0.4, n=40: P(constant) = gamma(39)/gamma(0); discards per path are geometric.
    const ModelParams p = tl(0.4);
    const TaqquLevyModel t(p);
    const double prob = acv(p, 39) / acv(p, 0);
    const int reps = 20000;
    std::int64_t discards = 0;
    for (int r = 0; r < reps; ++r) {
        discards += generate_taqqu_levy(t, 40, substream_seed(3, r)).meta.discard_count;
    }
    // E[discards] = p/(1-p)
    const double est = static_cast<double>(discards) / (reps + static_cast<double>(discards));
    const double se = std::sqrt(prob * (1.0 - prob) / (reps + static_cast<double>(discards)));
    CHECK(std::abs(est - prob) < 4.0 * se);
}

TEST_CASE("Taqqu-Levy second moments match gamma(k)")
{
    const ModelParams p = tl(0.1);
    const TaqquLevyModel t(p);
    for (std::int64_t k : {0, 1, 5}) {
        const Moments m = mc(20000, [&](int r) {
            const auto v = generate_taqqu_levy(t, 1000, substream_seed(11, r)).values;
            return v[100] * v[static_cast<std::size_t>(100 + k)];
        });
        CAPTURE(k);
        CHECK(std::abs(m.mean - acv(p, k)) < 4.0 * m.se);
    }
}

TEST_CASE("Parke second moments match the truncated autocovariance")
{
    for (double d : {0.1, 0.4}) {
        const ModelParams p = pk(d);
        const ParkeModel model(p);
        // shocks older than the J truncation are never alive
        const double dropped = parke_survival_tail_sum(p, model.j_pmf.truncation + 1);
        const std::int64_t lags[] = {0, 1, 5};
        double s[3] = {};
        double s2[3] = {};
        const int reps = 10000;
        for (int r = 0; r < reps; ++r) {
            const auto v = generate_parke(model, 8, substream_seed(13, r)).values;
            for (int i = 0; i < 3; ++i) {
                const double x = v[0] * v[static_cast<std::size_t>(lags[i])];
                s[i] += x;
                s2[i] += x * x;
            }
        }
        for (int i = 0; i < 3; ++i) {
            const double mean = s[i] / reps;
            const double se = std::sqrt((s2[i] / reps - mean * mean) / reps);
            const double target = p.sigma_eps_sq * (parke_survival_tail_sum(p, lags[i]) - dropped);
            CAPTURE(d);
            CAPTURE(lags[i]);
            CHECK(std::abs(mean - target) < 4.0 * se);
        }
    }
}

TEST_CASE("Parke running sum equals the direct sum of live shocks")
{
    const ParkeModel model(pk(0.4));
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        ParkeTrace trace;
        const SamplePath p = generate_parke(model, 3000, seed, &trace);
        CHECK(p.meta.j == -trace.shocks.front().time);
        for (std::int64_t t = 0; t < 3000; ++t) {
            CHECK(p.values[static_cast<std::size_t>(t)] == doctest::Approx(parke_direct_sum(trace, t)).epsilon(1e-12));
        }
        CHECK(p.meta.live_high_water >= 1);
    }
}

TEST_CASE("zero durations reduce Parke to white noise")
{
    ParkeModel model(pk(0.25));
    model.force_zero_durations = true;
    ParkeTrace trace;
    const SamplePath p = generate_parke(model, 200, 5, &trace);
    CHECK(p.meta.j == 0);
    CHECK(trace.shocks.size() == 200);
    for (std::size_t t = 0; t < 200; ++t) {
        CHECK(p.values[t] == doctest::Approx(trace.shocks[t].value));
    }
}

TEST_CASE("path CSV layout")
{
    const SamplePath p = generate_parke(pk(0.4), 25, 7);
    std::ostringstream out;
    write_path_csv(out, p, pk(0.4));
    std::istringstream in(out.str());
    std::string line;
    int meta = 0;
    int rows = 0;
    bool header = false;
    while (std::getline(in, line)) {
        if (line.rfind("#", 0) == 0) {
            CHECK_FALSE(header);
            ++meta;
        } else if (line == "value") {
            header = true;
        } else {
            ++rows;
        }
    }
    CHECK(meta >= 4);
    CHECK(header);
    CHECK(rows == 25);
}

TEST_CASE("invalid lengths")
{
    CHECK_THROWS_AS(generate_taqqu_levy(tl(0.1), 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(generate_parke(pk(0.1), 0, 1), std::invalid_argument);
}
