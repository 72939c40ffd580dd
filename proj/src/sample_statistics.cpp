// Copyright 2026 The ddlrd Authors
// SPDX-License-Identifier: Apache-2.0

#include "ddlrd/sample_statistics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace ddlrd {

AcfEstimate sample_acf_at(std::span<const double> values, std::span<const std::int64_t> lags)
{
    const auto n = static_cast<std::int64_t>(values.size());
    if (n < 1) {
        throw std::invalid_argument("sample_acf: empty path");
    }
    const double mean = sample_mean(values);
    std::vector<double> centered(values.begin(), values.end());
    for (double& v : centered) {
        v -= mean;
    }
    AcfEstimate est;
    est.n = n;
    est.lags.assign(lags.begin(), lags.end());
    est.gamma_hat.reserve(lags.size());
    for (std::int64_t k : lags) {
        if (k < 0 || k >= n) {
            throw std::out_of_range("sample_acf: lag must lie in [0, n)");
        }
        double acc = 0.0;
        for (std::int64_t t = 0; t + k < n; ++t) {
            acc += centered[static_cast<std::size_t>(t)] * centered[static_cast<std::size_t>(t + k)];
        }
        est.gamma_hat.push_back(acc / static_cast<double>(n));
    }
    double gamma0 = 0.0;
    for (double v : centered) {
        gamma0 += v * v;
    }
    gamma0 /= static_cast<double>(n);
    est.rho_hat.reserve(lags.size());
    for (std::size_t i = 0; i < lags.size(); ++i) {
        est.rho_hat.push_back(lags[i] == 0 ? 1.0 : est.gamma_hat[i] / gamma0);
    }
    return est;
}

AcfEstimate sample_acf(std::span<const double> values, std::int64_t max_lag)
{
    if (max_lag < 0 || max_lag >= static_cast<std::int64_t>(values.size())) {
        throw std::out_of_range("sample_acf: max_lag must lie in [0, n)");
    }
    std::vector<std::int64_t> lags(static_cast<std::size_t>(max_lag) + 1);
    std::iota(lags.begin(), lags.end(), 0);
    return sample_acf_at(values, lags);
}

SurvivalCurve duration_curve(const ModelParams& params)
{
    if (params.process == ProcessKind::parke) {
        return parke_curve(params);
    }
    return interarrival_curve(AcvSequence(params, 1));
}

NormalizingSeq normalizer(const ModelParams& params, std::int64_t n, const SurvivalCurve& curve)
{
    if (n < 2) {
        throw std::invalid_argument("normalizer needs n >= 2");
    }
    const double level = 1.0 / static_cast<double>(n);
    // Smallest integer t >= 1 with P(U > t) = G(t + 1) < 1/n.
    auto exceeds = [&](std::int64_t t) { return curve.g(t + 1) >= level; };
    std::int64_t lo = 0;
    std::int64_t hi = 1;
    while (exceeds(hi)) {
        lo = hi;
        if (hi > (std::int64_t{1} << 61)) {
            throw std::runtime_error("normalizer: duration curve does not vanish");
        }
        hi *= 2;
    }
    while (hi - lo > 1) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        if (exceeds(mid)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    NormalizingSeq norm;
    norm.alpha = params.alpha;
    norm.n = n;
    norm.quantile = hi;
    const double nd = static_cast<double>(n);
    norm.ell_n = static_cast<double>(hi) * std::pow(nd, -1.0 / params.alpha);
    norm.scale_partial_sum = norm.ell_n * std::pow(nd, 1.0 / params.alpha);
    norm.scale_acf = norm.ell_n * std::pow(nd, 1.0 / params.alpha - 1.0);
    return norm;
}

std::vector<double> partial_sum_path(std::span<const double> values,
                                     std::span<const double> s_grid,
                                     const NormalizingSeq& norm)
{
    const auto n = static_cast<std::int64_t>(values.size());
    std::vector<double> prefix(values.size() + 1, 0.0);
    for (std::size_t t = 0; t < values.size(); ++t) {
        prefix[t + 1] = prefix[t] + values[t];
    }
    std::vector<double> out;
    out.reserve(s_grid.size());
    for (double s : s_grid) {
        if (!(s >= 0.0 && s <= 1.0)) {
            throw std::domain_error("partial sum grid values must lie in [0, 1]");
        }
        const auto k = std::min<std::int64_t>(
            static_cast<std::int64_t>(std::floor(static_cast<double>(n) * s)), n);
        out.push_back(prefix[static_cast<std::size_t>(k)] / norm.scale_partial_sum);
    }
    return out;
}

std::vector<double> ecdf_deviation(const SamplePath& path,
                                   std::span<const double> x_grid,
                                   double sigma_w_sq,
                                   const NormalizingSeq& norm)
{
    if (path.kind != ProcessKind::taqqu_levy) {
        throw std::invalid_argument(
            "ecdf_deviation: the empirical-process limit is only established for Taqqu-Levy paths");
    }
    std::vector<double> sorted(path.values);
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    const double sigma_w = std::sqrt(sigma_w_sq);
    std::vector<double> out;
    out.reserve(x_grid.size());
    for (double x : x_grid) {
        const auto below = std::upper_bound(sorted.begin(), sorted.end(), x) - sorted.begin();
        const double f_hat = static_cast<double>(below) / n;
        const double f_w = 0.5 * std::erfc(-x / (sigma_w * std::sqrt(2.0)));
        out.push_back((f_hat - f_w) / norm.scale_acf);
    }
    return out;
}

std::vector<double> standardized_acf_deviation(const AcfEstimate& acf,
                                               const AcvSequence& acv,
                                               const NormalizingSeq& norm)
{
    std::vector<double> out;
    out.reserve(acf.lags.size());
    for (std::size_t i = 0; i < acf.lags.size(); ++i) {
        out.push_back((acf.gamma_hat[i] - acv(acf.lags[i])) / norm.scale_acf);
    }
    return out;
}

AcfDeviationStudy acf_deviation_study(std::span<const AcfEstimate> estimates,
                                      const AcvSequence& acv,
                                      const NormalizingSeq& norm)
{
    AcfDeviationStudy study;
    if (estimates.empty()) {
        return study;
    }
    study.lags = estimates.front().lags;
    const std::size_t q = study.lags.size();
    for (const auto& est : estimates) {
        if (est.lags != study.lags) {
            throw std::invalid_argument("acf_deviation_study: replications disagree on lags");
        }
        study.deviations.push_back(standardized_acf_deviation(est, acv, norm));
    }
    std::vector<std::vector<double>> by_lag(q);
    for (const auto& row : study.deviations) {
        for (std::size_t i = 0; i < q; ++i) {
            by_lag[i].push_back(row[i]);
        }
    }
    study.pearson.assign(q, std::vector<double>(q, 1.0));
    study.spearman.assign(q, std::vector<double>(q, 1.0));
    for (std::size_t i = 0; i < q; ++i) {
        study.median.push_back(median(by_lag[i]));
        study.iqr.push_back(quantile(by_lag[i], 0.75) - quantile(by_lag[i], 0.25));
        for (std::size_t k = i + 1; k < q; ++k) {
            study.pearson[i][k] = study.pearson[k][i] = pearson_correlation(by_lag[i], by_lag[k]);
            study.spearman[i][k] = study.spearman[k][i] = spearman_correlation(by_lag[i], by_lag[k]);
        }
    }
    return study;
}

double sample_mean(std::span<const double> x)
{
    if (x.empty()) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

double sample_variance(std::span<const double> x)
{
    if (x.size() < 2) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    const double m = sample_mean(x);
    double acc = 0.0;
    for (double v : x) {
        acc += (v - m) * (v - m);
    }
    return acc / static_cast<double>(x.size() - 1);
}

double quantile(std::span<const double> x, double p)
{
    if (x.empty()) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    std::vector<double> s(x.begin(), x.end());
    std::sort(s.begin(), s.end());
    const double h = p * static_cast<double>(s.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, s.size() - 1);
    return s[lo] + (h - static_cast<double>(lo)) * (s[hi] - s[lo]);
}

double median(std::span<const double> x) { return quantile(x, 0.5); }

double pearson_correlation(std::span<const double> x, std::span<const double> y)
{
    if (x.size() != y.size() || x.size() < 2) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    const double mx = sample_mean(x);
    const double my = sample_mean(y);
    double sxy = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    return sxy / std::sqrt(sxx * syy);
}

namespace {

std::vector<double> ranks(std::span<const double> x)
{
    std::vector<std::size_t> order(x.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    std::vector<double> r(x.size());
    for (std::size_t i = 0; i < order.size();) {
        std::size_t k = i;
        while (k + 1 < order.size() && x[order[k + 1]] == x[order[i]]) {
            ++k;
        }
        const double avg = 0.5 * static_cast<double>(i + k) + 1.0;
        for (std::size_t m = i; m <= k; ++m) {
            r[order[m]] = avg;
        }
        i = k + 1;
    }
    return r;
}

}  // namespace

double spearman_correlation(std::span<const double> x, std::span<const double> y)
{
    const auto rx = ranks(x);
    const auto ry = ranks(y);
    return pearson_correlation(rx, ry);
}

}  // namespace ddlrd
