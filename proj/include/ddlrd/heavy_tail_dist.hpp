// Copyright 2026 The ddlrd Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DDLRD_HEAVY_TAIL_DIST_HPP
#define DDLRD_HEAVY_TAIL_DIST_HPP

#include "ddlrd/arfima_model.hpp"
#include "ddlrd/rng.hpp"

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <vector>

namespace ddlrd {

/// Survival function G(t) = P(X >= t) of an integer random variable, together
/// with a continuous strictly decreasing extension G~ that agrees with G at
/// every integer of the support.
///
/// Values below `table_size` are tabulated once at construction; sampling is
/// integer bisection on G, so draws satisfy G(x) >= u > G(x+1) exactly.
class SurvivalCurve {
public:
    using Extension = std::function<double(double)>;

    static constexpr std::int64_t unbounded = std::numeric_limits<std::int64_t>::max();
    static constexpr std::int64_t default_table_size = 1 << 16;

    /// `extension(t)` must equal G(t) at integers t >= support_min and be
    /// non-increasing. Above `support_max` the curve is zero.
    SurvivalCurve(std::string name,
                  std::int64_t support_min,
                  Extension extension,
                  std::int64_t table_size = default_table_size,
                  std::int64_t support_max = unbounded);

    const std::string& name() const { return state_->name; }
    std::int64_t support_min() const { return support_min_; }
    std::int64_t support_max() const { return state_->support_max; }

    /// P(X >= t); equals 1 for t <= support_min.
    double g(std::int64_t t) const;
    double g_tilde(double t) const;

    /// The integer x with G(x) >= u > G(x+1), for u in (0, 1). With a cap,
    /// returns min(x, cap) without searching past it.
    std::int64_t sample(double u, std::int64_t cap = unbounded) const;
    std::int64_t sample(Rng& rng, std::int64_t cap = unbounded) const
    {
        return sample(uniform_open(rng), cap);
    }

    /// Curve of X given X >= floor: G(i) / G(floor) for i >= floor.
    SurvivalCurve conditional(std::int64_t floor) const;

private:
    struct State {
        std::string name;
        std::int64_t support_max;
        Extension extension;
        std::vector<double> table;  // G at absolute t in [0, table.size())
    };

    SurvivalCurve(std::shared_ptr<const State> state, std::int64_t support_min, double denom);

    double base_g(std::int64_t t) const;

    std::shared_ptr<const State> state_;
    std::int64_t support_min_;
    double denom_ = 1.0;
};

/// P(S0 >= t) = gamma(t) / gamma(0), support from 0.
SurvivalCurve s0_curve(const AcvSequence& acv);

/// P(T >= t) = [gamma(t-1) - gamma(t)] / [gamma(0) - gamma(1)], support from 1.
SurvivalCurve interarrival_curve(const AcvSequence& acv);

/// Parke survival probability p_k = P(N >= k).
double parke_survival(const ModelParams& params, std::int64_t k);
double parke_survival_continuous(const ModelParams& params, double k);

/// sum_{k >= r} p_k in closed form.
double parke_survival_tail_sum(const ModelParams& params, std::int64_t r);

/// Curve k -> p_k, support from 0.
SurvivalCurve parke_curve(const ModelParams& params);

/// Curve of N given N >= floor.
SurvivalCurve conditional_survival(const SurvivalCurve& curve, std::int64_t floor);

/// Distribution of J, the age of the oldest shock alive at time 0, truncated
/// to {0, ..., truncation}.
struct TruncatedPmf {
    std::vector<double> probabilities;  // renormalized, index j = 0..truncation
    std::int64_t truncation = 0;
    double raw_mass = 0.0;              // P(J <= truncation) before renormalizing
};

inline constexpr std::int64_t default_j_truncation = 10000;
inline constexpr std::int64_t j_inner_cutoff = 10'000'000;

TruncatedPmf j_distribution(const ModelParams& params,
                            std::int64_t truncation = default_j_truncation,
                            std::int64_t inner_cutoff = j_inner_cutoff);

/// Survival curve of a truncated pmf, for sampling.
SurvivalCurve pmf_curve(const TruncatedPmf& pmf);

}  // namespace ddlrd

#endif
