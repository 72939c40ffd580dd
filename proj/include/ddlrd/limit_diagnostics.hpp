// Copyright 2026 The ddlrd Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DDLRD_LIMIT_DIAGNOSTICS_HPP
#define DDLRD_LIMIT_DIAGNOSTICS_HPP

#include "ddlrd/arfima_model.hpp"
#include "ddlrd/noise.hpp"
#include "ddlrd/spectral_analysis.hpp"

#include <complex>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace ddlrd {

/// Parameters of the alpha-stable limit
///   E exp(i u L(t)) = exp{-t |u|^a m Gamma(1-a) cos(pi a/2) (1 - i beta sign(u) tan(pi a/2))}.
/// `m_alpha` already contains any 1/mu factor.
struct StableLimitParams {
    double alpha = 1.5;
    double beta = 0.0;
    double m_alpha = 1.0;
    double mu = 1.0;
};

/// Limit of standardized sample autocovariance deviations.
StableLimitParams acf_limit(const ModelParams& params, const NoiseDist& noise = NoiseDist::gaussian());

/// Limit of standardized partial sums (symmetric noise gives beta = 0).
StableLimitParams partial_sum_limit(const ModelParams& params,
                                    const NoiseDist& noise = NoiseDist::gaussian());

std::complex<double> stable_cf(const StableLimitParams& params, double u, double t = 1.0);

/// (1/N) sum_k exp(i u x_k)
std::complex<double> empirical_cf(std::span<const double> sample, double u);

enum class AdVariant { composite, simple };

struct AdResult {
    double statistic = 0.0;  // A^2
    double modified = 0.0;   // A^2 (1 + 0.75/N + 2.25/N^2) for the composite test
    double p_value = 1.0;
    std::size_t n = 0;
};

/// Anderson-Darling normality test. The composite variant estimates mean and
/// variance from the sample; the simple variant tests N(mean, variance).
AdResult anderson_darling(std::span<const double> sample,
                          AdVariant variant = AdVariant::composite,
                          double mean = 0.0,
                          double variance = 1.0);

struct VarianceCi {
    double s2 = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    bool reject_half = false;  // 0.5 outside [lower, upper]
    std::size_t n = 0;
};

VarianceCi variance_ci(std::span<const double> sample, double level = 0.95);
VarianceCi variance_ci(double s2, std::size_t n, double level = 0.95);

struct GphEstimate {
    double d_hat = 0.0;
    double intercept = 0.0;
    std::int64_t m = 0;
    std::int64_t l = 0;
    double se_nominal = 0.0;  // pi / sqrt(24 m)
};

/// Least squares of log I_j on -2 log|2 sin(x_j/2)| over j = l+1 .. m.
GphEstimate gph(std::span<const DftRecord> records, std::int64_t m, std::int64_t l = 0);

/// floor(sqrt(n))
std::int64_t default_gph_bandwidth(std::int64_t n);

/// Hill estimate of the tail index of |sample| from the top fraction.
double hill_tail_index(std::span<const double> sample, double top_fraction);

/// (Phi^{-1}((i - 0.5)/N), x_(i)) pairs.
std::vector<std::pair<double, double>> qq_data(std::span<const double> sample);

double normal_quantile(double p);
double normal_cdf(double z);

}  // namespace ddlrd

#endif
