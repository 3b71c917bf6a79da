#include "doctest.h"

#include "oracles.hpp"

#include "ncqm/errors.hpp"
#include "ncqm/fractional.hpp"

#include <cmath>
#include <numbers>

using namespace ncqm;
using namespace ncqm::fractional;
using oracle_ref::rel;

namespace {

// Caputo derivative of e^x from the term-by-term series sum_{n>=1} x^(n-nu) / Gamma(n+1-nu).
double caputo_exp_series(double nu, double x) {
    double sum = 0.0;
    for (int n = 1; n < 200; ++n) {
        const double t = std::exp((n - nu) * std::log(x) - std::lgamma(n + 1 - nu));
        sum += t;
        if (n > x + 5 && t < 1e-18 * sum) break;
    }
    return sum;
}

double rl_power(double p, double nu, double x) {
    return std::tgamma(p + 1) / std::tgamma(p + 1 - nu) * std::pow(x, p - nu);
}

}  // namespace

TEST_CASE("Caputo derivative of power series") {
    PowerSeriesFn poly{1.0, {1.0, 2.0, 3.0}};
    for (double x : {0.0, 0.4, 2.0}) CHECK(caputo_series_derivative(poly, x) == doctest::Approx(2 + 6 * x));

    PowerSeriesFn half{0.5, {0.0, 1.0}};
    CHECK(caputo_series_derivative(half, 0.7) == doctest::Approx(std::tgamma(1.5)).epsilon(1e-14));

    // E_a(x^a) is an eigenfunction.
    for (double a : {0.3, 0.5, 0.9}) {
        PowerSeriesFn ml{a, {}};
        for (int k = 0; k < 120; ++k) ml.coeffs.push_back(1.0 / std::tgamma(k * a + 1));
        for (double x : {0.2, 0.8, 1.5}) {
            double f = 0.0;
            for (std::size_t k = 0; k < ml.coeffs.size(); ++k) f += ml.coeffs[k] * std::pow(x, k * a);
            CHECK(rel(caputo_series_derivative(ml, x), f) < 1e-12);
        }
    }

    PowerSeriesFn bounded{1.0, {1.0, 1.0}, 1.0};
    CHECK_THROWS_AS(caputo_series_derivative(bounded, 1.0), DomainError);
    CHECK_THROWS_AS(caputo_series_derivative(PowerSeriesFn{0.0, {1.0}}, 0.5), ValidationError);
}

TEST_CASE("Caputo derivative of the exponential") {
    for (double x : {0.0, 0.5, 3.0}) CHECK(caputo_exp(1.0, x) == doctest::Approx(std::exp(x)).epsilon(1e-14));
    CHECK(caputo_exp(0.5, 0.0) == 0.0);
    double worst = 0.0;
    for (double nu : {0.1, 0.25, 0.5, 0.75, 0.95})
        for (double x = 0.05; x <= 10.0; x += 0.35) worst = std::max(worst, rel(caputo_exp(nu, x), caputo_exp_series(nu, x)));
    CHECK(worst < 1e-10);
    CHECK_THROWS_AS(caputo_exp(1.5, 1.0), DomainError);
    CHECK_THROWS_AS(caputo_exp(0.5, -1.0), DomainError);
}

TEST_CASE("Caputo of e^x equals Riemann-Liouville of e^x - 1") {
    for (double nu : {0.3, 0.5, 0.8}) {
        for (double x : {0.5, 1.5}) {
            const double rl = riemann_liouville([](double t) { return std::expm1(t); }, nu, x);
            CHECK(rel(caputo_exp(nu, x), rl) < 1e-8);
        }
    }
}

TEST_CASE("Caputo and Liouville exponentials differ by an incomplete-gamma factor") {
    // Caputo D^nu e^x = e^x P(1 - nu, x); Liouville gives e^x.
    for (double nu : {0.3, 0.7}) {
        const double s = 1.0 - nu;
        double prev_gap = 1.0;
        for (double x : {0.5, 2.0, 8.0}) {
            const double ratio = caputo_exp(nu, x) / liouville_exp(nu, 1.0, x);
            // t = u^(1/s) removes the t^-nu endpoint singularity.
            const double lower = oracle_ref::integrate(
                [&](double u) { return std::exp(-std::pow(u, 1.0 / s)); }, 0.0, std::pow(x, s), 64) / s;
            CHECK(rel(ratio, lower / std::tgamma(s)) < 1e-10);
            CHECK(1.0 - ratio < prev_gap);
            prev_gap = 1.0 - ratio;
        }
    }
}

TEST_CASE("Liouville exponential rule") {
    CHECK(liouville_exp(1.0, 2.0, 0.5) == doctest::Approx(2 * std::exp(1.0)));
    CHECK(liouville_exp(0.5, 4.0, 0.0) == doctest::Approx(2.0));
    CHECK(liouville_exp(0.5, 0.0, 3.0) == 0.0);
    // Semigroup in the order.
    CHECK(liouville_exp(0.3, 1.7, 0.2) * std::pow(1.7, 0.4) ==
          doctest::Approx(liouville_exp(0.7, 1.7, 0.2)).epsilon(1e-14));
    CHECK_THROWS_AS(liouville_exp(0.5, -1.0, 0.0), DomainError);
}

TEST_CASE("Riemann-Liouville of powers") {
    for (double x : {0.3, 1.0, 2.5}) {
        CHECK(rel(riemann_liouville([](double t) { return t; }, 0.5, x), 2 * std::sqrt(x / std::numbers::pi)) < 1e-8);
        CHECK(rel(riemann_liouville([](double) { return 1.0; }, 0.5, x), 1 / std::sqrt(std::numbers::pi * x)) < 1e-8);
        CHECK(rel(riemann_liouville([](double t) { return t * t; }, 1.5, x), rl_power(2, 1.5, x)) < 1e-7);
        CHECK(rel(riemann_liouville([](double t) { return std::pow(t, 0.7); }, 0.3, x), rl_power(0.7, 0.3, x)) < 1e-8);
    }
    CHECK_THROWS_AS(riemann_liouville([](double t) { return t; }, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(riemann_liouville([](double t) { return t; }, 0.5, 0.0), DomainError);
}

TEST_CASE("Riemann-Liouville linearity and order limits") {
    auto f = [](double t) { return std::sin(t); };
    auto g = [](double t) { return t * t * t; };
    const double x = 1.2, nu = 0.4;
    const double lhs = riemann_liouville([&](double t) { return 2 * f(t) - 3 * g(t); }, nu, x);
    CHECK(rel(lhs, 2 * riemann_liouville(f, nu, x) - 3 * riemann_liouville(g, nu, x)) < 1e-9);

    // nu -> 0 gives f, nu -> 1 from either side gives f'.
    CHECK(std::abs(riemann_liouville(f, 1e-4, x) - std::sin(x)) < 1e-3);
    CHECK(std::abs(riemann_liouville(f, 1.0 - 1e-4, x) - std::cos(x)) < 1e-3);
    CHECK(std::abs(riemann_liouville(f, 1.0 + 1e-4, x) - std::cos(x)) < 1e-3);
}

TEST_CASE("Riemann-Liouville composition for small orders") {
    auto f = [](double t) { return t + t * t; };
    const double x = 0.9;
    for (double a : {0.2, 0.4}) {
        const auto once = [&](double t) { return riemann_liouville(f, a, t); };
        const double twice = riemann_liouville(once, a, x);
        const double direct = rl_power(1, 2 * a, x) + rl_power(2, 2 * a, x);
        CHECK(rel(twice, direct) < 1e-6);
    }
}

TEST_CASE("Grunwald-Letnikov sum") {
    const auto w = grunwald_weights(0.5, 4);
    CHECK(w[0] == 1.0);
    CHECK(w[1] == -0.5);
    CHECK(w[2] == doctest::Approx(-0.125));
    const auto w1 = grunwald_weights(1.0, 3);
    CHECK(w1[1] == -1.0);
    CHECK(w1[2] == 0.0);
    // Generating function: sum_j w_j z^j = (1 - z)^order.
    const auto w7 = grunwald_weights(0.7, 200);
    double gen = 0.0;
    for (int j = 200; j >= 0; --j) gen = gen * 0.3 + w7[j];
    CHECK(gen == doctest::Approx(std::pow(0.7, 0.7)).epsilon(1e-14));

    auto lin = [](double t) { return 3 * t + 1; };
    CHECK(grunwald_letnikov(lin, 1.0, 2.0, 0.01) == doctest::Approx(3.0).epsilon(1e-10));
    auto sq = [](double t) { return t * t; };
    CHECK(grunwald_letnikov(sq, 2.0, 1.5, 0.01) == doctest::Approx(2.0).epsilon(1e-8));

    // First order in h, second after one Richardson step.
    auto id = [](double t) { return t; };
    const double exact = 2 * std::sqrt(1.0 / std::numbers::pi);
    const double e1 = std::abs(grunwald_letnikov(id, 0.5, 1.0, 1e-3) - exact);
    const double e2 = std::abs(grunwald_letnikov(id, 0.5, 1.0, 5e-4) - exact);
    CHECK(e1 / e2 == doctest::Approx(2.0).epsilon(0.05));
    const double rich = 2 * grunwald_letnikov(id, 0.5, 1.0, 5e-4) - grunwald_letnikov(id, 0.5, 1.0, 1e-3);
    CHECK(std::abs(rich - exact) < 0.05 * e2);
    CHECK_THROWS_AS(grunwald_letnikov(id, 0.5, 1.0, 0.0), DomainError);
}

TEST_CASE("plane-wave eigenvalue") {
    PhysicalConstants c;
    c.hbar = 0.5;
    const double e = 1.5;  // E / hbar = 3
    const auto one = plane_wave_eigenvalue(1.0, e, c);
    CHECK(one.value == cplx(0.0, -3.0));
    const auto two = plane_wave_eigenvalue(2.0, e, c);
    CHECK(two.value == cplx(-9.0, 0.0));
    for (double a : {0.3, 0.5, 1.7}) {
        const auto v = plane_wave_eigenvalue(a, e, c).value;
        CHECK(std::abs(v) == doctest::Approx(std::pow(3.0, a)).epsilon(1e-14));
        CHECK(std::arg(v) == doctest::Approx(-a * std::numbers::pi / 2).epsilon(1e-14));
    }
    // Order 1 against a finite difference of e^{-iEt/hbar}.
    auto wave = [&](double t) { return std::exp(cplx(0, -e * t / c.hbar)); };
    const double t = 0.4, h = 1e-5;
    const cplx fd = (wave(t + h) - wave(t - h)) / (2 * h);
    CHECK(std::abs(fd - one.value * wave(t)) < 1e-8);
    CHECK_THROWS_AS(plane_wave_eigenvalue(0.5, 0.0, c), DomainError);
}

TEST_CASE("quarter-turn power") {
    CHECK(quarter_turn_power(2.0, 1.0) == cplx(0.0, 2.0));
    CHECK(quarter_turn_power(2.0, -1.0) == cplx(0.0, -2.0));
    CHECK(quarter_turn_power(2.0, 6.0) == cplx(-2.0, 0.0));
    const cplx v = quarter_turn_power(1.0, 0.5);
    CHECK(v.real() == doctest::Approx(std::sqrt(0.5)));
    CHECK(v.imag() == doctest::Approx(std::sqrt(0.5)));
}

TEST_CASE("EO coefficients against principal complex powers") {
    ModelParams p;
    p.mechanism = Mechanism::eo_i;
    p.eta0 = 0.6;
    p.theta0 = 0.2;
    p.e_ref = 2.0;
    p.constants.mass = 1.5;
    for (double a : {0.5, 1.0, 1.5}) {
        p.alpha_exp = a;
        p.beta_exp = 0.5 * a;
        const auto one = eo_coefficients(p, EoCase::I);
        const cplx base_i(0.0, p.constants.hbar / p.e_ref);
        CHECK(std::abs(one.eta_coeff - p.eta0 * std::pow(base_i, a)) < 1e-14);
        CHECK(std::abs(one.theta_coeff - p.theta0 * std::pow(base_i, 0.5 * a)) < 1e-14);
        const auto two = eo_coefficients(p, EoCase::II);
        const double b2 = p.constants.hbar * p.constants.hbar / (2 * p.constants.mass * p.e_ref);
        CHECK(std::abs(two.eta_coeff - p.eta0 * std::polar(std::pow(b2, a), std::numbers::pi * a)) < 1e-14);
    }
    p.alpha_exp = 1.0;
    CHECK(eo_coefficients(p, EoCase::I).eta_coeff == cplx(0.0, 0.3));
    CHECK(eo_coefficients(p, EoCase::II).eta_coeff == cplx(-0.6 / 6.0, 0.0));
    p.mechanism = Mechanism::ec;
    CHECK_THROWS_AS(eo_coefficients(p, EoCase::I), UsageError);
}
