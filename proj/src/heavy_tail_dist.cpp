// Copyright 2026 The ddlrd Authors
// SPDX-License-Identifier: Apache-2.0

#include "ddlrd/heavy_tail_dist.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ddlrd {

SurvivalCurve::SurvivalCurve(std::string name,
                             std::int64_t support_min,
                             Extension extension,
                             std::int64_t table_size,
                             std::int64_t support_max)
    : support_min_(support_min)
{
    if (support_min < 0 || support_max < support_min) {
        throw std::invalid_argument("survival curve support is empty");
    }
    auto state = std::make_shared<State>();
    state->name = std::move(name);
    state->support_max = support_max;
    state->extension = std::move(extension);
    const std::int64_t last =
        support_max == unbounded ? table_size : std::min(table_size, support_max + 1);
    state->table.resize(static_cast<std::size_t>(std::max<std::int64_t>(last, 0)));
    for (std::int64_t t = 0; t < last; ++t) {
        state->table[static_cast<std::size_t>(t)] =
            t <= support_min ? 1.0 : state->extension(static_cast<double>(t));
    }
    state_ = std::move(state);
}

SurvivalCurve::SurvivalCurve(std::shared_ptr<const State> state,
                             std::int64_t support_min,
                             double denom)
    : state_(std::move(state)), support_min_(support_min), denom_(denom)
{
}

double SurvivalCurve::base_g(std::int64_t t) const
{
    if (t > state_->support_max) {
        return 0.0;
    }
    if (t < static_cast<std::int64_t>(state_->table.size())) {
        return state_->table[static_cast<std::size_t>(t)];
    }
    return state_->extension(static_cast<double>(t));
}

double SurvivalCurve::g(std::int64_t t) const
{
    if (t <= support_min_) {
        return 1.0;
    }
    return base_g(t) / denom_;
}

double SurvivalCurve::g_tilde(double t) const
{
    if (t <= static_cast<double>(support_min_)) {
        return 1.0;
    }
    if (t > static_cast<double>(state_->support_max)) {
        return 0.0;
    }
    return state_->extension(t) / denom_;
}

std::int64_t SurvivalCurve::sample(double u, std::int64_t cap) const
{
    if (!(u > 0.0 && u < 1.0)) {
        throw std::domain_error("inverse sampling requires u in (0, 1)");
    }
    if (cap < support_min_) {
        throw std::domain_error("sampling cap below the support");
    }
    if (cap != unbounded && g(cap) >= u) {
        return cap;
    }
    // Bracket: double the step until G(hi) < u.
    std::int64_t lo = support_min_;
    std::int64_t step = 1;
    std::int64_t hi = std::min(lo + 1, cap);
    while (g(hi) >= u) {
        lo = hi;
        if (step > (std::int64_t{1} << 60)) {
            throw std::runtime_error("survival curve '" + name() +
                                     "' does not vanish: bracketing exceeded 2^62");
        }
        step *= 2;
        hi = cap - lo > step ? lo + step : cap;
    }
    while (hi - lo > 1) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        if (g(mid) >= u) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if (!(g(lo) >= u && u > g(lo + 1))) {
        throw std::logic_error("inverse sampling sandwich violated on curve '" + name() + "'");
    }
    return lo;
}

SurvivalCurve SurvivalCurve::conditional(std::int64_t floor) const
{
    if (floor < support_min_) {
        throw std::domain_error("conditioning floor below the support");
    }
    const double base_floor = base_g(floor);
    if (!(base_floor > 0.0)) {
        throw std::domain_error("conditioning on a zero-probability event");
    }
    return SurvivalCurve(state_, floor, base_floor);
}

SurvivalCurve s0_curve(const AcvSequence& acv)
{
    const double d = acv.params().d;
    const double r0 = acv_gamma_ratio(0.0, d);
    return SurvivalCurve("S0", 0, [d, r0](double t) { return acv_gamma_ratio(t, d) / r0; });
}

SurvivalCurve interarrival_curve(const AcvSequence& acv)
{
    // gamma(t-1) - gamma(t) = gamma(t-1) (1-2d)/(t-d), so no differences of
    // nearly equal numbers are ever formed.
    const double d = acv.params().d;
    auto h = [d](double t) { return acv_gamma_ratio(t - 1.0, d) / (t - d); };
    const double h1 = h(1.0);
    return SurvivalCurve("T", 1, [h, h1](double t) { return h(t) / h1; });
}

namespace {

double parke_ratio(double k, double d)
{
    return boost::math::tgamma_delta_ratio(k + d, 2.0 - 2.0 * d);
}

}  // namespace

double parke_survival_continuous(const ModelParams& params, double k)
{
    validate_memory(params.d);
    if (!(k >= 0.0)) {
        throw std::domain_error("survival index must be non-negative");
    }
    return parke_ratio(k, params.d) / parke_ratio(0.0, params.d);
}

double parke_survival(const ModelParams& params, std::int64_t k)
{
    if (k < 0) {
        throw std::domain_error("survival index must be non-negative");
    }
    if (k == 0) {
        return 1.0;
    }
    return parke_survival_continuous(params, static_cast<double>(k));
}

double parke_survival_tail_sum(const ModelParams& params, std::int64_t r)
{
    validate_memory(params.d);
    if (r < 0) {
        throw std::domain_error("survival index must be non-negative");
    }
    // sum_{k>=r} Gamma(k+d)/Gamma(k+2-d) = Gamma(r+d) / ((1-2d) Gamma(r+1-d))
    const double d = params.d;
    return acv_gamma_ratio(static_cast<double>(r), d) / ((1.0 - 2.0 * d) * parke_ratio(0.0, d));
}

SurvivalCurve parke_curve(const ModelParams& params)
{
    validate_memory(params.d);
    const double d = params.d;
    const double r0 = parke_ratio(0.0, d);
    return SurvivalCurve("N", 0, [d, r0](double k) { return parke_ratio(k, d) / r0; });
}

SurvivalCurve conditional_survival(const SurvivalCurve& curve, std::int64_t floor)
{
    return curve.conditional(floor);
}

TruncatedPmf j_distribution(const ModelParams& params,
                            std::int64_t truncation,
                            std::int64_t inner_cutoff)
{
    validate_memory(params.d);
    if (truncation < 1) {
        throw std::invalid_argument("J truncation must be at least 1");
    }
    inner_cutoff = std::max(inner_cutoff, truncation);
    const double d = params.d;

    // log P(J <= truncation) = sum_{k > truncation} log(1 - p_k); the terms
    // beyond inner_cutoff are -sum p_k in closed form (the p_k^2 remainder is
    // below 1e-12 there for d <= 0.45).
    double log_tail = -parke_survival_tail_sum(params, inner_cutoff + 1);
    {
        double p = parke_survival(params, truncation + 1);
        for (std::int64_t k = truncation + 1; k <= inner_cutoff; ++k) {
            if ((k - truncation - 1) % 4096 == 0) {
                p = parke_survival(params, k);
            }
            log_tail += std::log1p(-p);
            p *= (static_cast<double>(k) + d) / (static_cast<double>(k) + 2.0 - d);
        }
    }

    // Cumulative log-cdf for j = truncation down to 0.
    std::vector<double> log_cdf(static_cast<std::size_t>(truncation) + 1);
    log_cdf[static_cast<std::size_t>(truncation)] = log_tail;
    for (std::int64_t j = truncation - 1; j >= 0; --j) {
        log_cdf[static_cast<std::size_t>(j)] =
            log_cdf[static_cast<std::size_t>(j) + 1] + std::log1p(-parke_survival(params, j + 1));
    }

    TruncatedPmf pmf;
    pmf.truncation = truncation;
    pmf.raw_mass = std::exp(log_tail);
    if (!(pmf.raw_mass > 1e-6)) {
        throw std::domain_error("J distribution mass below truncation vanishes; increase truncation");
    }
    pmf.probabilities.resize(log_cdf.size());
    double prev = 0.0;
    for (std::size_t j = 0; j < log_cdf.size(); ++j) {
        const double cdf = std::exp(log_cdf[j]);
        pmf.probabilities[j] = std::max(cdf - prev, 0.0) / pmf.raw_mass;
        prev = cdf;
    }
    return pmf;
}

SurvivalCurve pmf_curve(const TruncatedPmf& pmf)
{
    // G(j) = P(J >= j) as suffix sums, which keeps the small tail values accurate.
    auto surv = std::make_shared<std::vector<double>>(pmf.probabilities.size() + 1, 0.0);
    for (std::size_t j = pmf.probabilities.size(); j-- > 0;) {
        (*surv)[j] = (*surv)[j + 1] + pmf.probabilities[j];
    }
    (*surv)[0] = 1.0;
    const std::int64_t k = pmf.truncation;
    auto extension = [surv, k](double t) {
        if (t <= 0.0) {
            return 1.0;
        }
        if (t >= static_cast<double>(k + 1)) {
            return 0.0;
        }
        const auto i = static_cast<std::size_t>(std::floor(t));
        const double frac = t - static_cast<double>(i);
        return (*surv)[i] + frac * ((*surv)[i + 1] - (*surv)[i]);
    };
    return SurvivalCurve("J", 0, extension, k + 1, k);
}

}  // namespace ddlrd
