// Copyright 2026 The ddlrd Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DDLRD_ARFIMA_MODEL_HPP
#define DDLRD_ARFIMA_MODEL_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ddlrd {

enum class ProcessKind { taqqu_levy, parke };

std::string_view to_string(ProcessKind kind);
ProcessKind parse_process_kind(std::string_view text);

/// Memory parameter and the variance calibration of one DDLRD process.
///
/// Everything is derived from d in (0, 1/2): H = d + 1/2, alpha = 2 - 2d.
/// For the Taqqu-Levy process the ARFIMA innovation variance is fixed at one
/// and the reward variance equals gamma(0); for the Parke process the shock
/// variance is fixed at one and sigma0_sq follows from the duration law.
struct ModelParams {
    double d = 0.0;
    double hurst = 0.5;
    double alpha = 2.0;
    double sigma0_sq = 1.0;
    double sigma_eps_sq = 1.0;
    double sigma_w_sq = 1.0;
    double mu = 1.0;  // mean interarrival time, Taqqu-Levy only
    ProcessKind process = ProcessKind::taqqu_levy;
};

double hurst_from_d(double d);
double alpha_from_d(double d);
double d_from_alpha(double alpha);
double d_from_hurst(double hurst);

/// Throws std::domain_error unless d lies strictly inside (0, 1/2).
void validate_memory(double d);

/// Fill a ModelParams for `process` at memory parameter d.
ModelParams convert_params(double d, ProcessKind process);

/// Gamma(x + d) / Gamma(x + 1 - d) for real x >= 0, accurate at large x.
double acv_gamma_ratio(double x, double d);

/// ARFIMA(0,d,0) autocovariance at integer lag t.
double acv(const ModelParams& params, std::int64_t t);

/// Same formula at a real lag; agrees with acv() at integers.
double acv_continuous(const ModelParams& params, double t);

/// Autocovariance sequence memoized on [0, t_max]. Immutable once built.
class AcvSequence {
public:
    AcvSequence(const ModelParams& params, std::int64_t t_max);

    const ModelParams& params() const { return params_; }
    std::int64_t t_max() const { return static_cast<std::int64_t>(cache_.size()) - 1; }

    /// gamma(t); lags past t_max are evaluated directly.
    double operator()(std::int64_t t) const;
    double at_real(double t) const { return acv_continuous(params_, t); }

private:
    ModelParams params_;
    std::vector<double> cache_;
};

/// f(x) = sigma0^2 / (2 pi) |2 sin(x/2)|^{-2d} on (0, pi].
double spectral_density(const ModelParams& params, double x);

/// Constant c in gamma(t) ~ c t^{2H-2}.
double acv_tail_constant(const ModelParams& params);

}  // namespace ddlrd

#endif
