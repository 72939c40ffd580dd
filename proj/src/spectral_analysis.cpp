// Copyright 2026 The ddlrd Authors
// SPDX-License-Identifier: Apache-2.0

#include "ddlrd/spectral_analysis.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <mutex>
#include <numbers>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace ddlrd {

namespace {

constexpr std::int64_t resync_interval = 1024;

std::mutex& fftw_planner_mutex()
{
    static std::mutex m;
    return m;
}

double mean_of(std::span<const double> values)
{
    return std::accumulate(values.begin(), values.end(), 0.0) /
           static_cast<double>(values.size());
}

DftRecord finish_record(std::int64_t j, std::int64_t n, double a, double b, const ModelParams& params)
{
    DftRecord r;
    r.j = j;
    r.x = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
    r.a = a;
    r.b = b;
    r.i = a * a + b * b;
    r.f = spectral_density(params, r.x);
    const double root_f = std::sqrt(r.f);
    r.a_norm = a / root_f;
    r.b_norm = b / root_f;
    r.i_norm = r.i / r.f;
    return r;
}

}  // namespace

double log_two_sin(double x) { return std::log(std::abs(2.0 * std::sin(0.5 * x))); }

std::int64_t max_fourier_index(std::int64_t n) { return n / 2 - 1; }

std::int64_t floor_fifth_power(std::int64_t n, int m)
{
    if (n < 1 || m < 0 || m > 5) {
        throw std::invalid_argument("floor_fifth_power: bad arguments");
    }
    using wide = __int128;
    wide target = 1;
    for (int i = 0; i < m; ++i) {
        target *= n;
    }
    auto k = static_cast<std::int64_t>(
        std::floor(std::pow(static_cast<long double>(n), static_cast<long double>(m) / 5.0L)));
    auto fifth = [](std::int64_t v) {
        wide p = 1;
        for (int i = 0; i < 5; ++i) {
            p *= v;
        }
        return p;
    };
    while (k > 0 && fifth(k) > target) {
        --k;
    }
    while (fifth(k + 1) <= target) {
        ++k;
    }
    return k;
}

FrequencyGrid paper_grid(std::int64_t n)
{
    if (n < 16) {
        throw std::invalid_argument("paper grid needs n >= 16");
    }
    const std::vector<std::pair<std::int64_t, std::string>> candidates = {
        {1, "1"},
        {2, "2"},
        {floor_fifth_power(n, 1), "n^0.2"},
        {floor_fifth_power(n, 2), "n^0.4"},
        {floor_fifth_power(n, 3), "n^0.6"},
        {floor_fifth_power(n, 4), "n^0.8"},
        {n / 2 - 2, "n/2-2"},
        {n / 2 - 1, "n/2-1"},
    };
    FrequencyGrid grid;
    grid.n = n;
    const std::int64_t top = max_fourier_index(n);
    for (const auto& [j, label] : candidates) {
        if (j < 1 || j > top) {
            continue;
        }
        auto it = std::lower_bound(grid.indices.begin(), grid.indices.end(), j);
        if (it != grid.indices.end() && *it == j) {
            continue;
        }
        const auto pos = it - grid.indices.begin();
        grid.indices.insert(it, j);
        grid.labels.insert(grid.labels.begin() + pos, label);
    }
    return grid;
}

FrequencyGrid parse_grid(std::int64_t n, const std::string& spec)
{
    if (spec.empty() || spec == "paper") {
        return paper_grid(n);
    }
    if (spec == "none") {
        FrequencyGrid empty;
        empty.n = n;
        return empty;
    }
    const FrequencyGrid full = paper_grid(n);
    FrequencyGrid grid;
    grid.n = n;
    std::stringstream ss(spec);
    std::string token;
    std::vector<std::pair<std::int64_t, std::string>> picked;
    while (std::getline(ss, token, ',')) {
        if (token.empty()) {
            continue;
        }
        auto named = std::find(full.labels.begin(), full.labels.end(), token);
        std::int64_t j = 0;
        if (named != full.labels.end()) {
            j = full.indices[static_cast<std::size_t>(named - full.labels.begin())];
        } else {
            std::size_t used = 0;
            j = std::stoll(token, &used);
            if (used != token.size()) {
                throw std::invalid_argument("bad frequency grid entry: " + token);
            }
        }
        if (j < 1 || j > max_fourier_index(n)) {
            throw std::invalid_argument("frequency index out of range: " + token);
        }
        picked.emplace_back(j, token);
    }
    std::sort(picked.begin(), picked.end());
    for (const auto& [j, label] : picked) {
        if (grid.indices.empty() || grid.indices.back() != j) {
            grid.indices.push_back(j);
            grid.labels.push_back(label);
        }
    }
    return grid;
}

DftRecord dft_at(std::span<const double> values,
                 std::int64_t j,
                 const ModelParams& params,
                 DftOptions options)
{
    const auto n = static_cast<std::int64_t>(values.size());
    if (j < 1 || j > max_fourier_index(n)) {
        throw std::out_of_range("Fourier index " + std::to_string(j) + " outside [1, n/2-1]");
    }
    const double shift = options.mean_correct ? mean_of(values) : 0.0;
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
    const double ct = std::cos(theta);
    const double st = std::sin(theta);

    double c = 1.0;
    double s = 0.0;
    double sum_c = 0.0;
    double sum_s = 0.0;
    for (std::int64_t t = 0; t < n; ++t) {
        if (t % resync_interval == 0) {
            const auto phase = static_cast<double>((static_cast<__int128>(j) * t) % n);
            const double angle = 2.0 * std::numbers::pi * phase / static_cast<double>(n);
            c = std::cos(angle);
            s = std::sin(angle);
        }
        const double v = values[static_cast<std::size_t>(t)] - shift;
        sum_c += v * c;
        sum_s += v * s;
        const double next_c = c * ct - s * st;
        s = s * ct + c * st;
        c = next_c;
    }
    const double scale = 1.0 / std::sqrt(2.0 * std::numbers::pi * static_cast<double>(n));
    return finish_record(j, n, sum_c * scale, sum_s * scale, params);
}

std::vector<DftRecord> full_periodogram(std::span<const double> values,
                                        const ModelParams& params,
                                        DftOptions options)
{
    const auto n = static_cast<std::int64_t>(values.size());
    if (n < 4) {
        throw std::invalid_argument("full periodogram needs n >= 4");
    }
    const double shift = options.mean_correct ? mean_of(values) : 0.0;
    const std::int64_t bins = n / 2 + 1;

    double* in = fftw_alloc_real(static_cast<std::size_t>(n));
    fftw_complex* out = fftw_alloc_complex(static_cast<std::size_t>(bins));
    fftw_plan plan = nullptr;
    {
        std::lock_guard<std::mutex> lock(fftw_planner_mutex());
        plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in, out, FFTW_ESTIMATE);
    }
    for (std::int64_t t = 0; t < n; ++t) {
        in[t] = values[static_cast<std::size_t>(t)] - shift;
    }
    fftw_execute(plan);

    // FFTW returns sum x_t e^{-i x_j t}: real part is the cosine sum, the
    // imaginary part is minus the sine sum.
    const double scale = 1.0 / std::sqrt(2.0 * std::numbers::pi * static_cast<double>(n));
    std::vector<DftRecord> records;
    records.reserve(static_cast<std::size_t>(std::max<std::int64_t>(max_fourier_index(n), 0)));
    for (std::int64_t j = 1; j <= max_fourier_index(n); ++j) {
        records.push_back(finish_record(j, n, out[j][0] * scale, -out[j][1] * scale, params));
    }
    {
        std::lock_guard<std::mutex> lock(fftw_planner_mutex());
        fftw_destroy_plan(plan);
    }
    fftw_free(out);
    fftw_free(in);
    return records;
}

void write_sweep_csv(std::ostream& out, std::span<const DftRecord> records)
{
    out << "j,x_j,a_j,b_j,i_j,f_j,a_norm,b_norm,i_norm,log_i,log_2sin\n";
    out << std::setprecision(17);
    for (const auto& r : records) {
        out << r.j << ',' << r.x << ',' << r.a << ',' << r.b << ',' << r.i << ',' << r.f << ','
            << r.a_norm << ',' << r.b_norm << ',' << r.i_norm << ',' << std::log(r.i) << ','
            << log_two_sin(r.x) << '\n';
    }
}

}  // namespace ddlrd
