#include "doctest.h"

#include "ddlrd/limit_diagnostics.hpp"

#include <stdexcept>
#include <cmath>
#include <numbers>

using namespace ddlrd;

namespace {

std::vector<double> normal_grid(std::size_t n)
{
    std::vector<double> x;
    for (std::size_t i = 1; i <= n; ++i) {
        x.push_back(normal_quantile((static_cast<double>(i) - 0.5) / static_cast<double>(n)));
    }
    return x;
}

}  // namespace

TEST_CASE("composite Anderson-Darling against reference values")
{
    // raw A^2 and p-values from statsmodels.stats.diagnostic.normal_ad
    const AdResult g = anderson_darling(normal_grid(500));
    CHECK(g.statistic == doctest::Approx(0.002847164906938815).epsilon(1e-8));
    CHECK(g.p_value == doctest::Approx(0.999998053392253).epsilon(1e-10));

    const std::vector<double> small = {0.3, -1.2, 0.8, 2.1, -0.4, 0.05, 1.7, -2.2, 0.9, -0.6, 0.1, 1.1};
    const AdResult s = anderson_darling(small);
    CHECK(s.statistic == doctest::Approx(0.13788528654953858).epsilon(1e-10));
    CHECK(s.p_value == doctest::Approx(0.9647397439772255).epsilon(1e-10));
    CHECK(s.modified == doctest::Approx(s.statistic * (1.0 + 0.75 / 12 + 2.25 / 144)));

    std::vector<double> lin;
    for (int i = 0; i < 40; ++i) {
        lin.push_back(0.01 + 0.98 * i / 39.0);
    }
    const AdResult l = anderson_darling(lin);
    CHECK(l.statistic == doctest::Approx(0.4266572177713357).epsilon(1e-10));
    CHECK(l.p_value == doctest::Approx(0.2993313880605049).epsilon(1e-10));

    std::vector<double> ex;
    for (int i = 1; i <= 200; ++i) {
        ex.push_back(-std::log(1.0 - (i - 0.5) / 200.0));
    }
    const AdResult e = anderson_darling(ex);
    CHECK(e.statistic == doctest::Approx(9.224961202921293).epsilon(1e-10));
    CHECK(e.p_value == doctest::Approx(1.9733684951650788e-22).epsilon(1e-8));
}

TEST_CASE("Anderson-Darling on very heavy tails stays finite and rejects")
{
    // Cauchy quantile grid plus two huge points: far tails need the log-CDF expansion
    std::vector<double> x;
    for (int i = 1; i <= 500; ++i) {
        x.push_back(std::tan(std::numbers::pi * ((i - 0.5) / 500.0 - 0.5)));
    }
    x.push_back(1e20);
    x.push_back(-1e20);
    const AdResult r = anderson_darling(x);
    CHECK(std::isfinite(r.statistic));
    CHECK(r.p_value < 0.01);
    CHECK(r.p_value >= 0.0);
}

TEST_CASE("simple-null Anderson-Darling")
{
    const AdResult r = anderson_darling(normal_grid(500), AdVariant::simple, 0.0, 1.0);
    CHECK(r.p_value > 0.99);
    const AdResult shifted = anderson_darling(normal_grid(500), AdVariant::simple, 0.5, 1.0);
    CHECK(shifted.p_value < 1e-6);
    // N(0, 1/2) null for normalized DFT coefficients
    auto half = normal_grid(500);
    for (double& v : half) {
        v *= std::sqrt(0.5);
    }
    CHECK(anderson_darling(half, AdVariant::simple, 0.0, 0.5).p_value > 0.99);
    CHECK(anderson_darling(half, AdVariant::simple, 0.0, 1.0).p_value < 0.01);
}

TEST_CASE("Anderson-Darling errors")
{
    CHECK_THROWS_AS(anderson_darling(std::vector<double>(7, 0.1)), std::invalid_argument);
    CHECK_THROWS_AS(anderson_darling(std::vector<double>(20, 0.1)), std::domain_error);
}

TEST_CASE("variance confidence intervals")
{
    struct Row {
        double s2, lo, hi;
    };
    // chi-square(499) quantile intervals, scipy.stats.chi2.ppf
    for (const Row& r : {Row{0.54, 0.47879, 0.61381}, Row{0.66, 0.58519, 0.75021}, Row{0.5, 0.44333, 0.56834},
                         Row{0.49, 0.43446, 0.55697}, Row{0.58, 0.51426, 0.65927}}) {
        const VarianceCi ci = variance_ci(r.s2, 500);
        CHECK(ci.lower == doctest::Approx(r.lo).epsilon(2e-5));
        CHECK(ci.upper == doctest::Approx(r.hi).epsilon(2e-5));
        CHECK(ci.reject_half == (0.5 < ci.lower || 0.5 > ci.upper));
    }
    CHECK(variance_ci(0.66, 500).reject_half);
    CHECK(variance_ci(0.58, 500).reject_half);
    CHECK_FALSE(variance_ci(0.54, 500).reject_half);
    CHECK_THROWS_AS(variance_ci(0.5, 1), std::invalid_argument);
    CHECK_THROWS_AS(variance_ci(0.0, 10), std::domain_error);
    const std::vector<double> x = {1, 2, 3, 4};
    CHECK(variance_ci(x).s2 == doctest::Approx(5.0 / 3.0));
}

TEST_CASE("stable characteristic function")
{
    StableLimitParams p;
    p.alpha = 1.5;
    p.beta = 0.0;
    p.m_alpha = 2.0;
    CHECK(stable_cf(p, 0.0) == std::complex<double>(1.0, 0.0));
    // symmetric: real, and exp(-|u|^a m Gamma(1-a) cos(pi a/2))
    const double scale = 2.0 * std::tgamma(-0.5) * std::cos(0.75 * std::numbers::pi);
    CHECK(scale > 0.0);
    const auto v = stable_cf(p, 0.7);
    CHECK(v.real() == doctest::Approx(std::exp(-std::pow(0.7, 1.5) * scale)));
    CHECK(v.imag() == doctest::Approx(0.0));
    // conjugate symmetry and time scaling
    p.beta = 1.0;
    CHECK(std::abs(stable_cf(p, -0.8) - std::conj(stable_cf(p, 0.8))) < 1e-15);
    CHECK(std::abs(stable_cf(p, 0.8, 2.0) - stable_cf(p, 0.8) * stable_cf(p, 0.8)) < 1e-15);
    // phase is scale * beta * tan(pi a/2)
    const auto w = stable_cf(p, 0.3);
    CHECK(w.imag() * std::tan(0.75 * std::numbers::pi) > 0.0);
    p.alpha = 2.0;
    CHECK_THROWS_AS(stable_cf(p, 1.0), std::domain_error);
    p.alpha = 1.0;
    CHECK_THROWS_AS(stable_cf(p, 1.0), std::domain_error);
}

TEST_CASE("stable limit parameters")
{
    const ModelParams pk = convert_params(0.1, ProcessKind::parke);
    const StableLimitParams a = acf_limit(pk);
    CHECK(a.alpha == doctest::Approx(1.8));
    CHECK(a.beta == 1.0);
    CHECK(a.mu == 1.0);
    CHECK(a.m_alpha == doctest::Approx(std::pow(pk.sigma_eps_sq, 1.8) * gaussian_abs_moment(3.6)));
    const ModelParams tl = convert_params(0.4, ProcessKind::taqqu_levy);
    const StableLimitParams b = acf_limit(tl);
    CHECK(b.m_alpha == doctest::Approx(std::pow(tl.sigma_w_sq, 1.2) * gaussian_abs_moment(2.4) / tl.mu));
    const StableLimitParams c = partial_sum_limit(tl);
    CHECK(c.beta == 0.0);
    CHECK(c.m_alpha == doctest::Approx(std::pow(tl.sigma_w_sq, 0.6) * gaussian_abs_moment(1.2) / tl.mu));
}

TEST_CASE("empirical characteristic function")
{
    const std::vector<double> x = {0.0, 1.0};
    const auto e = empirical_cf(x, 2.0);
    CHECK(e.real() == doctest::Approx((1.0 + std::cos(2.0)) / 2.0));
    CHECK(e.imag() == doctest::Approx(std::sin(2.0) / 2.0));
}

TEST_CASE("log-periodogram regression")
{
    std::vector<DftRecord> recs;
    const std::int64_t n = 2048;
    for (std::int64_t j = 1; j < n / 2; ++j) {
        DftRecord r;
        r.j = j;
        r.x = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
        r.i = 1.7 * std::pow(std::abs(2.0 * std::sin(r.x / 2.0)), -0.6);
        recs.push_back(r);
    }
    const GphEstimate g = gph(recs, 45, 0);
    CHECK(g.d_hat == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(g.intercept == doctest::Approx(std::log(1.7)).epsilon(1e-12));
    CHECK(g.se_nominal == doctest::Approx(std::numbers::pi / std::sqrt(24.0 * 45.0)));
    CHECK(gph(recs, 45, 5).d_hat == doctest::Approx(0.3).epsilon(1e-12));
    CHECK_THROWS_AS(gph(recs, 3, 1), std::invalid_argument);
    CHECK_THROWS_AS(gph(recs, 5, 5), std::invalid_argument);
    CHECK_THROWS_AS(gph(recs, 5000, 0), std::invalid_argument);
    CHECK(default_gph_bandwidth(10000) == 100);
    CHECK(default_gph_bandwidth(9999) == 99);
}

TEST_CASE("Hill estimator recovers a Pareto index")
{
    // exact Pareto(1.5) quantiles
    std::vector<double> x;
    const int n = 20000;
    for (int i = 1; i <= n; ++i) {
        x.push_back(std::pow(1.0 - (i - 0.5) / n, -1.0 / 1.5));
    }
    CHECK(hill_tail_index(x, 0.05) == doctest::Approx(1.5).epsilon(0.02));
    CHECK_THROWS_AS(hill_tail_index(std::vector<double>(50, 1.0), 0.1), std::invalid_argument);
    CHECK_THROWS_AS(hill_tail_index(x, 0.5), std::invalid_argument);
}

TEST_CASE("QQ pairs and normal helpers")
{
    const std::vector<double> x = {3.0, 1.0, 2.0, 0.0};
    const auto qq = qq_data(x);
    CHECK(qq.size() == 4);
    CHECK(qq[0].second == 0.0);
    CHECK(qq[3].second == 3.0);
    CHECK(qq[0].first == doctest::Approx(normal_quantile(0.125)));
    CHECK(normal_quantile(0.975) == doctest::Approx(1.959963984540054));
    CHECK(normal_cdf(1.959963984540054) == doctest::Approx(0.975));
    CHECK_THROWS_AS(qq_data(std::vector<double>{1.0}), std::invalid_argument);
}
