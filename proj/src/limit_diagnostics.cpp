// Copyright 2026 The ddlrd Authors
// SPDX-License-Identifier: Apache-2.0

#include "ddlrd/limit_diagnostics.hpp"

#include "ddlrd/sample_statistics.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ddlrd {

StableLimitParams acf_limit(const ModelParams& params, const NoiseDist& noise)
{
    StableLimitParams s;
    s.alpha = params.alpha;
    s.beta = 1.0;  // xi = noise^2 (duration - mean) has a right heavy tail only
    if (params.process == ProcessKind::parke) {
        s.mu = 1.0;
        s.m_alpha = std::pow(params.sigma_eps_sq, params.alpha) * noise.abs_moment(2.0 * params.alpha);
    } else {
        s.mu = params.mu;
        s.m_alpha = std::pow(params.sigma_w_sq, params.alpha) *
                    noise.abs_moment(2.0 * params.alpha) / params.mu;
    }
    return s;
}

StableLimitParams partial_sum_limit(const ModelParams& params, const NoiseDist& noise)
{
    StableLimitParams s;
    s.alpha = params.alpha;
    s.beta = 0.0;
    if (params.process == ProcessKind::parke) {
        s.mu = 1.0;
        s.m_alpha = std::pow(params.sigma_eps_sq, params.alpha / 2.0) * noise.abs_moment(params.alpha);
    } else {
        s.mu = params.mu;
        s.m_alpha = std::pow(params.sigma_w_sq, params.alpha / 2.0) *
                    noise.abs_moment(params.alpha) / params.mu;
    }
    return s;
}

std::complex<double> stable_cf(const StableLimitParams& params, double u, double t)
{
    const double a = params.alpha;
    if (!(a > 1.0 && a < 2.0)) {
        throw std::domain_error("stable_cf: alpha must lie strictly inside (1, 2)");
    }
    if (u == 0.0) {
        return {1.0, 0.0};
    }
    // Gamma(1-a) = Gamma(2-a)/(1-a); the product with cos(pi a/2) is positive.
    const double gamma_1ma = std::tgamma(2.0 - a) / (1.0 - a);
    const double scale = t * std::pow(std::abs(u), a) * params.m_alpha * gamma_1ma *
                         std::cos(std::numbers::pi * a / 2.0);
    const double skew = params.beta * (u > 0.0 ? 1.0 : -1.0) * std::tan(std::numbers::pi * a / 2.0);
    return std::exp(std::complex<double>(-scale, scale * skew));
}

std::complex<double> empirical_cf(std::span<const double> sample, double u)
{
    std::complex<double> acc{0.0, 0.0};
    for (double x : sample) {
        acc += std::polar(1.0, u * x);
    }
    return acc / static_cast<double>(sample.size());
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double normal_quantile(double p)
{
    return boost::math::quantile(boost::math::normal_distribution<double>(), p);
}

namespace {

// log Phi(z) without underflow in the far lower tail.
double log_normal_cdf(double z)
{
    if (z > -30.0) {
        return std::log(normal_cdf(z));
    }
    // Mills ratio expansion
    const double z2 = z * z;
    const double series = 1.0 - 1.0 / z2 + 3.0 / (z2 * z2) - 15.0 / (z2 * z2 * z2);
    return -0.5 * z2 - std::log(-z) - 0.5 * std::log(2.0 * std::numbers::pi) + std::log(series);
}

// D'Agostino & Stephens (1986), case 3 p-values for the modified statistic.
double composite_p_value(double a)
{
    // The fitted quadratic turns upward past its minimum near a = 153.
    if (a >= 153.0) {
        return 0.0;
    }
    if (a >= 0.6) {
        return std::exp(1.2937 - 5.709 * a + 0.0186 * a * a);
    }
    if (a >= 0.34) {
        return std::exp(0.9177 - 4.279 * a - 1.38 * a * a);
    }
    if (a >= 0.2) {
        return 1.0 - std::exp(-8.318 + 42.796 * a - 59.938 * a * a);
    }
    return 1.0 - std::exp(-13.436 + 101.14 * a - 223.73 * a * a);
}

// Marsaglia & Marsaglia (2004) limiting distribution of A^2, fully specified null.
double simple_p_value(double z)
{
    if (z <= 0.0) {
        return 1.0;
    }
    double cdf = 0.0;
    if (z < 2.0) {
        cdf = std::exp(-1.2337141 / z) / std::sqrt(z) *
              (2.00012 + (0.247105 - (0.0649821 - (0.0347962 - (0.011672 - 0.00168691 * z) * z) * z) * z) * z);
    } else {
        cdf = std::exp(-std::exp(1.0776 - (2.30695 - (0.43424 - (0.082433 - (0.008056 - 0.0003146 * z) * z) * z) * z) * z));
    }
    return std::clamp(1.0 - cdf, 0.0, 1.0);
}

}  // namespace

AdResult anderson_darling(std::span<const double> sample, AdVariant variant, double mean, double variance)
{
    const std::size_t n = sample.size();
    if (n < 8) {
        throw std::invalid_argument("Anderson-Darling test needs at least 8 observations");
    }
    std::vector<double> x(sample.begin(), sample.end());
    std::sort(x.begin(), x.end());
    double loc = mean;
    double sd = std::sqrt(variance);
    if (variant == AdVariant::composite) {
        loc = sample_mean(x);
        sd = std::sqrt(sample_variance(x));
    }
    if (!(sd > 0.0) || !std::isfinite(sd) || x.front() == x.back()) {
        throw std::domain_error("Anderson-Darling test on a degenerate sample");
    }
    const double nd = static_cast<double>(n);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double lo = (x[i] - loc) / sd;
        const double hi = (x[n - 1 - i] - loc) / sd;
        acc += (2.0 * static_cast<double>(i) + 1.0) * (log_normal_cdf(lo) + log_normal_cdf(-hi));
    }
    AdResult r;
    r.n = n;
    r.statistic = -nd - acc / nd;
    if (variant == AdVariant::composite) {
        r.modified = r.statistic * (1.0 + 0.75 / nd + 2.25 / (nd * nd));
        r.p_value = std::clamp(composite_p_value(r.modified), 0.0, 1.0);
    } else {
        r.modified = r.statistic;
        r.p_value = simple_p_value(r.statistic);
    }
    return r;
}

VarianceCi variance_ci(double s2, std::size_t n, double level)
{
    if (n < 2) {
        throw std::invalid_argument("variance interval needs at least 2 observations");
    }
    if (!(s2 > 0.0) || !std::isfinite(s2)) {
        throw std::domain_error("variance interval on a degenerate sample");
    }
    const double dof = static_cast<double>(n - 1);
    boost::math::chi_squared_distribution<double> chi2(dof);
    const double tail = 0.5 * (1.0 - level);
    VarianceCi ci;
    ci.s2 = s2;
    ci.n = n;
    ci.lower = dof * s2 / boost::math::quantile(boost::math::complement(chi2, tail));
    ci.upper = dof * s2 / boost::math::quantile(chi2, tail);
    ci.reject_half = 0.5 < ci.lower || 0.5 > ci.upper;
    return ci;
}

VarianceCi variance_ci(std::span<const double> sample, double level)
{
    return variance_ci(sample_variance(sample), sample.size(), level);
}

std::int64_t default_gph_bandwidth(std::int64_t n)
{
    auto m = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
    while (m * m > n) {
        --m;
    }
    while ((m + 1) * (m + 1) <= n) {
        ++m;
    }
    return m;
}

GphEstimate gph(std::span<const DftRecord> records, std::int64_t m, std::int64_t l)
{
    if (l < 0 || m <= l) {
        throw std::invalid_argument("gph: need 0 <= l < m");
    }
    double sx = 0.0;
    double sy = 0.0;
    double sxx = 0.0;
    double sxy = 0.0;
    std::int64_t count = 0;
    std::int64_t max_j = 0;
    for (const auto& r : records) {
        max_j = std::max(max_j, r.j);
        if (r.j <= l || r.j > m || !(r.i > 0.0)) {
            continue;
        }
        const double x = -2.0 * log_two_sin(r.x);
        const double y = std::log(r.i);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++count;
    }
    if (m > max_j) {
        throw std::invalid_argument("gph: bandwidth exceeds the available frequencies");
    }
    if (count < 3) {
        throw std::invalid_argument("gph: fewer than 3 usable frequencies");
    }
    const double c = static_cast<double>(count);
    const double mx = sx / c;
    const double my = sy / c;
    GphEstimate est;
    est.d_hat = (sxy - c * mx * my) / (sxx - c * mx * mx);
    est.intercept = my - est.d_hat * mx;
    est.m = m;
    est.l = l;
    est.se_nominal = std::numbers::pi / (std::sqrt(24.0) * std::sqrt(static_cast<double>(m)));
    return est;
}

double hill_tail_index(std::span<const double> sample, double top_fraction)
{
    if (sample.size() < 100) {
        throw std::invalid_argument("Hill estimator needs at least 100 observations");
    }
    if (!(top_fraction > 0.0 && top_fraction <= 0.2)) {
        throw std::invalid_argument("Hill top fraction must lie in (0, 0.2]");
    }
    std::vector<double> a;
    a.reserve(sample.size());
    for (double v : sample) {
        a.push_back(std::abs(v));
    }
    std::sort(a.begin(), a.end(), std::greater<>());
    const auto k = static_cast<std::size_t>(std::floor(top_fraction * static_cast<double>(a.size())));
    if (k < 2 || !(a[k] > 0.0)) {
        throw std::invalid_argument("Hill estimator: too few positive exceedances");
    }
    const double log_threshold = std::log(a[k]);
    double acc = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        acc += std::log(a[i]) - log_threshold;
    }
    return static_cast<double>(k) / acc;
}

std::vector<std::pair<double, double>> qq_data(std::span<const double> sample)
{
    const std::size_t n = sample.size();
    if (n < 2) {
        throw std::invalid_argument("QQ data needs at least 2 observations");
    }
    std::vector<double> sorted(sample.begin(), sample.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::pair<double, double>> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double p = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
        out.emplace_back(normal_quantile(p), sorted[i]);
    }
    return out;
}

}  // namespace ddlrd
