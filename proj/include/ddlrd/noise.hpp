// Copyright 2026 The ddlrd Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DDLRD_NOISE_HPP
#define DDLRD_NOISE_HPP

#include "ddlrd/rng.hpp"

#include <string>
#include <string_view>

namespace ddlrd {

/// Zero-mean, unit-variance distribution used for Taqqu-Levy rewards and
/// Parke shocks. Gaussian by default.
class NoiseDist {
public:
    enum class Kind { gaussian, student_t, uniform, rademacher };

    NoiseDist() = default;
    static NoiseDist gaussian() { return NoiseDist(Kind::gaussian, 0.0); }
    /// Student t with `dof` > 2 degrees of freedom, rescaled to unit variance.
    static NoiseDist student_t(double dof);
    static NoiseDist uniform() { return NoiseDist(Kind::uniform, 0.0); }
    static NoiseDist rademacher() { return NoiseDist(Kind::rademacher, 0.0); }
    static NoiseDist parse(std::string_view spec);

    Kind kind() const { return kind_; }
    double dof() const { return dof_; }
    std::string describe() const;

    double draw(Rng& rng) const;

    /// Whether E|X|^q is finite.
    bool has_moment(double q) const;

    /// E|X|^q for the unit-variance law; infinite when has_moment(q) is false.
    double abs_moment(double q) const;

private:
    NoiseDist(Kind kind, double dof) : kind_(kind), dof_(dof) {}

    Kind kind_ = Kind::gaussian;
    double dof_ = 0.0;
};

/// E|Z|^q for a standard normal Z: 2^{q/2} Gamma((q+1)/2) / sqrt(pi).
double gaussian_abs_moment(double q);

}  // namespace ddlrd

#endif
