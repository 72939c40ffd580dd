// Copyright 2026 The ddlrd Authors
// SPDX-License-Identifier: Apache-2.0

#include "ddlrd/noise.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ddlrd {

namespace {

// Marsaglia polar method, one variate per call so draws depend only on the
// engine state.
double standard_normal(Rng& rng)
{
    for (;;) {
        const double v1 = 2.0 * uniform_open(rng) - 1.0;
        const double v2 = 2.0 * uniform_open(rng) - 1.0;
        const double s = v1 * v1 + v2 * v2;
        if (s > 0.0 && s < 1.0) {
            return v1 * std::sqrt(-2.0 * std::log(s) / s);
        }
    }
}

}  // namespace

double gaussian_abs_moment(double q)
{
    return std::pow(2.0, q / 2.0) * std::tgamma((q + 1.0) / 2.0) / std::sqrt(std::numbers::pi);
}

NoiseDist NoiseDist::student_t(double dof)
{
    if (!(dof > 2.0)) {
        throw std::invalid_argument("Student t noise needs more than 2 degrees of freedom");
    }
    return NoiseDist(Kind::student_t, dof);
}

NoiseDist NoiseDist::parse(std::string_view spec)
{
    if (spec == "gaussian" || spec == "normal") {
        return gaussian();
    }
    if (spec == "uniform") {
        return uniform();
    }
    if (spec == "rademacher") {
        return rademacher();
    }
    if (spec.rfind("t", 0) == 0 && spec.size() > 1) {
        return student_t(std::stod(std::string(spec.substr(spec[1] == ':' ? 2 : 1))));
    }
    throw std::invalid_argument("unknown noise distribution: " + std::string(spec));
}

std::string NoiseDist::describe() const
{
    switch (kind_) {
    case Kind::gaussian:
        return "gaussian";
    case Kind::student_t:
        return "t:" + std::to_string(dof_);
    case Kind::uniform:
        return "uniform";
    case Kind::rademacher:
        return "rademacher";
    }
    return "unknown";
}

double NoiseDist::draw(Rng& rng) const
{
    switch (kind_) {
    case Kind::gaussian:
        return standard_normal(rng);
    case Kind::student_t: {
        std::gamma_distribution<double> half_chi2(dof_ / 2.0, 2.0);
        const double z = standard_normal(rng);
        const double v = half_chi2(rng);
        return z / std::sqrt(v / dof_) * std::sqrt((dof_ - 2.0) / dof_);
    }
    case Kind::uniform:
        return std::sqrt(3.0) * (2.0 * uniform_open(rng) - 1.0);
    case Kind::rademacher:
        return (rng() >> 63) != 0 ? 1.0 : -1.0;
    }
    return 0.0;
}

bool NoiseDist::has_moment(double q) const
{
    return kind_ != Kind::student_t || q < dof_;
}

double NoiseDist::abs_moment(double q) const
{
    switch (kind_) {
    case Kind::gaussian:
        return gaussian_abs_moment(q);
    case Kind::student_t: {
        if (!has_moment(q)) {
            return std::numeric_limits<double>::infinity();
        }
        const double raw = std::pow(dof_, q / 2.0) * std::tgamma((q + 1.0) / 2.0) *
                           std::tgamma((dof_ - q) / 2.0) /
                           (std::sqrt(std::numbers::pi) * std::tgamma(dof_ / 2.0));
        return raw * std::pow((dof_ - 2.0) / dof_, q / 2.0);
    }
    case Kind::uniform:
        return std::pow(std::sqrt(3.0), q) / (q + 1.0);
    case Kind::rademacher:
        return 1.0;
    }
    return 0.0;
}

}  // namespace ddlrd
