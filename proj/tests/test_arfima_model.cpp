#include "doctest.h"

#include "ddlrd/arfima_model.hpp"

#include <stdexcept>
#include <cmath>
#include <numbers>

using namespace ddlrd;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

ModelParams tl(double d) { return convert_params(d, ProcessKind::taqqu_levy); }
ModelParams pk(double d) { return convert_params(d, ProcessKind::parke); }

}  // namespace

TEST_CASE("parameter conversions round trip")
{
    for (double d : {0.05, 0.1, 0.25, 0.4, 0.49}) {
        CHECK(hurst_from_d(d) == doctest::Approx(d + 0.5));
        CHECK(alpha_from_d(d) == doctest::Approx(2.0 - 2.0 * d));
        CHECK(d_from_alpha(alpha_from_d(d)) == doctest::Approx(d).epsilon(1e-15));
        CHECK(d_from_hurst(hurst_from_d(d)) == doctest::Approx(d).epsilon(1e-15));
        // H = (3 - alpha) / 2
        CHECK(hurst_from_d(d) == doctest::Approx((3.0 - alpha_from_d(d)) / 2.0));
    }
    CHECK(1.0 - 1.0 / alpha_from_d(0.1) == doctest::Approx(0.4444444444));
    CHECK(1.0 - 1.0 / alpha_from_d(0.4) == doctest::Approx(0.1666666667));
}

TEST_CASE("memory parameter outside (0, 1/2) is rejected")
{
    for (double d : {0.0, 0.5, -0.1, 0.7, std::nan("")}) {
        CHECK_THROWS_AS(validate_memory(d), std::domain_error);
        CHECK_THROWS_AS(convert_params(d, ProcessKind::parke), std::domain_error);
    }
    CHECK_THROWS_AS(parse_process_kind("arfima"), std::invalid_argument);
    CHECK(parse_process_kind("taqqu-levy") == ProcessKind::taqqu_levy);
    CHECK(parse_process_kind("parke") == ProcessKind::parke);
}

TEST_CASE("autocovariance against high-precision values")
{
    // Gamma(0.8)/Gamma(0.9)^2
    CHECK(rel(acv(tl(0.1), 0), 1.0194947882253109831) < 1e-14);
    CHECK(rel(acv(tl(0.1), 12345), 6.1048963552953170263e-5) < 1e-12);
    CHECK(rel(acv(tl(0.4), 12345), 0.21117900636985566666) < 1e-12);
    CHECK(rel(acv(tl(0.1), 10'000'000), 2.8765449882403619254e-7) < 1e-10);
    CHECK(rel(acv(tl(0.4), 10'000'000), 0.055328508242540523342) < 1e-10);
    CHECK_THROWS_AS(acv(tl(0.1), -1), std::domain_error);
}

TEST_CASE("lag-one recursion gamma(t) = gamma(t-1) (t-1+d)/(t-d)")
{
    for (double d : {0.1, 0.4}) {
        const AcvSequence g(tl(d), 2000);
        for (std::int64_t t = 1; t <= 2000; ++t) {
            const double td = static_cast<double>(t);
            CHECK(rel(g(t), g(t - 1) * (td - 1.0 + d) / (td - d)) < 1e-13);
        }
        CHECK(g(2001) == doctest::Approx(acv(tl(d), 2001)).epsilon(1e-15));
        CHECK(g.at_real(7.0) == doctest::Approx(g(7)).epsilon(1e-14));
    }
}

TEST_CASE("power-law tail constant")
{
    CHECK(acv_tail_constant(tl(0.1)) == doctest::Approx(0.11451731862382134).epsilon(1e-13));
    CHECK(acv_tail_constant(tl(0.4)) == doctest::Approx(1.3897892913010342).epsilon(1e-13));
    const double d = 0.1;
    for (double t : {1e4, 1e5}) {
        const double scaled = acv(tl(d), static_cast<std::int64_t>(t)) * std::pow(t, 1.0 - 2.0 * d);
        CHECK(rel(scaled, acv_tail_constant(tl(d))) < 1e-9);
    }
}

TEST_CASE("Parke calibration")
{
    CHECK(pk(0.1).sigma0_sq == doctest::Approx(1.1034877401956586).epsilon(1e-14));
    CHECK(pk(0.4).sigma0_sq == doctest::Approx(1.4492065248014831).epsilon(1e-14));
    CHECK(acv(pk(0.1), 0) == doctest::Approx(1.125).epsilon(1e-14));
    CHECK(acv(pk(0.4), 0) == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(acv(pk(0.1), 1) == doctest::Approx(0.125).epsilon(1e-14));
    CHECK(acv(pk(0.4), 1) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(acv(pk(0.1), 5) == doctest::Approx(0.034854211124628507).epsilon(1e-13));
    CHECK(acv(pk(0.4), 5) == doctest::Approx(1.4593088071348962).epsilon(1e-13));
}

TEST_CASE("Taqqu-Levy calibration")
{
    for (double d : {0.1, 0.4}) {
        const ModelParams p = tl(d);
        CHECK(p.sigma0_sq == 1.0);
        CHECK(p.sigma_w_sq == doctest::Approx(acv(p, 0)));
        CHECK(p.mu == doctest::Approx(acv(p, 0) / (acv(p, 0) - acv(p, 1))));
        // gamma(1)/gamma(0) = d/(1-d)
        CHECK(p.mu == doctest::Approx((1.0 - d) / (1.0 - 2.0 * d)));
    }
}

// Truncated Fourier series averaged over a trailing window of partial sums.
double spectral_oracle(const AcvSequence& g, double x, std::int64_t top, std::int64_t window)
{
    double partial = g(0);
    double avg = 0.0;
    for (std::int64_t k = 1; k <= top; ++k) {
        partial += 2.0 * g(k) * std::cos(static_cast<double>(k) * x);
        if (k > top - window) {
            avg += partial;
        }
    }
    return avg / static_cast<double>(window) / (2.0 * std::numbers::pi);
}

TEST_CASE("spectral density is the Fourier transform of the autocovariance")
{
    for (double d : {0.1, 0.4}) {
        const AcvSequence g(tl(d), 1'000'000);
        for (double x : {0.1, 1.0, std::numbers::pi}) {
            CHECK(rel(spectral_oracle(g, x, 1'000'000, 10'000), spectral_density(tl(d), x)) < 1e-3);
        }
    }
}

TEST_CASE("spectral density domain")
{
    CHECK_THROWS_AS(spectral_density(tl(0.1), 0.0), std::domain_error);
    CHECK_THROWS_AS(spectral_density(tl(0.1), 3.2), std::domain_error);
    // at x = pi, |2 sin(pi/2)| = 2
    CHECK(spectral_density(tl(0.25), std::numbers::pi) ==
          doctest::Approx(std::pow(2.0, -0.5) / (2.0 * std::numbers::pi)));
}

