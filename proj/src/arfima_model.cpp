// Copyright 2026 The ddlrd Authors
// SPDX-License-Identifier: Apache-2.0

#include "ddlrd/arfima_model.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ddlrd {

std::string_view to_string(ProcessKind kind)
{
    return kind == ProcessKind::parke ? "parke" : "taqqu-levy";
}

ProcessKind parse_process_kind(std::string_view text)
{
    if (text == "parke") {
        return ProcessKind::parke;
    }
    if (text == "taqqu-levy" || text == "taqqu_levy" || text == "tl") {
        return ProcessKind::taqqu_levy;
    }
    throw std::invalid_argument("unknown process kind: " + std::string(text));
}

double hurst_from_d(double d) { return d + 0.5; }
double alpha_from_d(double d) { return 2.0 - 2.0 * d; }
double d_from_alpha(double alpha) { return 1.0 - alpha / 2.0; }
double d_from_hurst(double hurst) { return hurst - 0.5; }

void validate_memory(double d)
{
    if (!(d > 0.0 && d < 0.5)) {
        throw std::domain_error("memory parameter d must lie in (0, 0.5), got " +
                                std::to_string(d));
    }
}

double acv_gamma_ratio(double x, double d)
{
    // Gamma(x+d)/Gamma(x+d+(1-2d))
    return boost::math::tgamma_delta_ratio(x + d, 1.0 - 2.0 * d);
}

namespace {

double acv_prefactor(double d)
{
    // Gamma(1-2d) / (Gamma(1-d) Gamma(d))
    return boost::math::tgamma_ratio(1.0 - 2.0 * d, 1.0 - d) / std::tgamma(d);
}

}  // namespace

double acv_continuous(const ModelParams& params, double t)
{
    validate_memory(params.d);
    if (!(t >= 0.0)) {
        throw std::domain_error("autocovariance lag must be non-negative");
    }
    return params.sigma0_sq * acv_prefactor(params.d) * acv_gamma_ratio(t, params.d);
}

double acv(const ModelParams& params, std::int64_t t)
{
    if (t < 0) {
        throw std::domain_error("autocovariance lag must be non-negative");
    }
    return acv_continuous(params, static_cast<double>(t));
}

double acv_tail_constant(const ModelParams& params)
{
    validate_memory(params.d);
    return params.sigma0_sq * acv_prefactor(params.d);
}

ModelParams convert_params(double d, ProcessKind process)
{
    validate_memory(d);
    ModelParams p;
    p.d = d;
    p.hurst = hurst_from_d(d);
    p.alpha = alpha_from_d(d);
    p.process = process;
    if (process == ProcessKind::parke) {
        p.sigma_eps_sq = 1.0;
        p.sigma0_sq = boost::math::tgamma_ratio(1.0 - d, 2.0 - 2.0 * d) *
                      std::tgamma(2.0 - d) * p.sigma_eps_sq;
        p.sigma_w_sq = 0.0;
        p.mu = 1.0;
    } else {
        p.sigma0_sq = 1.0;
        const double g0 = acv(p, 0);
        const double g1 = acv(p, 1);
        p.sigma_w_sq = g0;
        p.mu = g0 / (g0 - g1);
        p.sigma_eps_sq = 0.0;
    }
    return p;
}

AcvSequence::AcvSequence(const ModelParams& params, std::int64_t t_max)
    : params_(params)
{
    validate_memory(params.d);
    if (t_max < 0) {
        throw std::domain_error("AcvSequence t_max must be non-negative");
    }
    cache_.resize(static_cast<std::size_t>(t_max) + 1);
    const double pre = params.sigma0_sq * acv_prefactor(params.d);
    for (std::size_t t = 0; t < cache_.size(); ++t) {
        cache_[t] = pre * acv_gamma_ratio(static_cast<double>(t), params.d);
    }
}

double AcvSequence::operator()(std::int64_t t) const
{
    if (t < 0) {
        throw std::domain_error("autocovariance lag must be non-negative");
    }
    if (t < static_cast<std::int64_t>(cache_.size())) {
        return cache_[static_cast<std::size_t>(t)];
    }
    return acv(params_, t);
}

double spectral_density(const ModelParams& params, double x)
{
    if (!(x > 0.0) || x > std::numbers::pi) {
        throw std::domain_error("spectral density frequency must lie in (0, pi]");
    }
    const double s = std::abs(2.0 * std::sin(0.5 * x));
    return params.sigma0_sq / (2.0 * std::numbers::pi) * std::pow(s, -2.0 * params.d);
}

}  // namespace ddlrd
