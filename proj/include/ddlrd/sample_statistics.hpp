// Copyright 2026 The ddlrd Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DDLRD_SAMPLE_STATISTICS_HPP
#define DDLRD_SAMPLE_STATISTICS_HPP

#include "ddlrd/arfima_model.hpp"
#include "ddlrd/generators.hpp"
#include "ddlrd/heavy_tail_dist.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace ddlrd {

/// Mean-corrected sample autocovariances with divisor n.
struct AcfEstimate {
    std::int64_t n = 0;
    std::vector<std::int64_t> lags;
    std::vector<double> gamma_hat;
    std::vector<double> rho_hat;
};

AcfEstimate sample_acf(std::span<const double> values, std::int64_t max_lag);

/// Same estimator at an arbitrary list of lags.
AcfEstimate sample_acf_at(std::span<const double> values, std::span<const std::int64_t> lags);

/// Normalization built from the duration quantile t* = inf{t : P(U > t) < 1/n}:
/// ell(n) = t* n^{-1/alpha}.
struct NormalizingSeq {
    double alpha = 0.0;
    std::int64_t n = 0;
    std::int64_t quantile = 0;
    double ell_n = 0.0;
    double scale_partial_sum = 0.0;  // ell(n) n^{1/alpha}
    double scale_acf = 0.0;          // ell(n) n^{1/alpha - 1}
};

/// `curve` is the duration law: T for Taqqu-Levy, N for Parke.
NormalizingSeq normalizer(const ModelParams& params, std::int64_t n, const SurvivalCurve& curve);

/// Duration survival curve matching the process in `params`.
SurvivalCurve duration_curve(const ModelParams& params);

/// ell(n)^{-1} n^{-1/alpha} sum_{t < floor(n s)} X_t at each s.
std::vector<double> partial_sum_path(std::span<const double> values,
                                     std::span<const double> s_grid,
                                     const NormalizingSeq& norm);

/// ell(n)^{-1} n^{1-1/alpha} (F_n(x) - F_W(x)), F_W the N(0, sigma_w^2) cdf.
/// Defined for Taqqu-Levy paths only.
std::vector<double> ecdf_deviation(const SamplePath& path,
                                   std::span<const double> x_grid,
                                   double sigma_w_sq,
                                   const NormalizingSeq& norm);

/// ell(n)^{-1} n^{1-1/alpha} (gamma_hat(k) - gamma(k)) for each lag of `acf`.
std::vector<double> standardized_acf_deviation(const AcfEstimate& acf,
                                               const AcvSequence& acv,
                                               const NormalizingSeq& norm);

struct AcfDeviationStudy {
    std::vector<std::int64_t> lags;
    std::vector<std::vector<double>> deviations;  // [replication][lag]
    std::vector<std::vector<double>> pearson;     // [lag][lag]
    std::vector<std::vector<double>> spearman;    // [lag][lag]
    std::vector<double> median;
    std::vector<double> iqr;
};

/// Cross-replication summary; every estimate must carry the same lags.
AcfDeviationStudy acf_deviation_study(std::span<const AcfEstimate> estimates,
                                      const AcvSequence& acv,
                                      const NormalizingSeq& norm);

// Summary helpers shared with the harness.
double sample_mean(std::span<const double> x);
double sample_variance(std::span<const double> x);
double quantile(std::span<const double> x, double p);
double median(std::span<const double> x);
double pearson_correlation(std::span<const double> x, std::span<const double> y);
double spearman_correlation(std::span<const double> x, std::span<const double> y);

}  // namespace ddlrd

#endif
