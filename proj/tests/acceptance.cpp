// Acceptance run: one line per criterion, exit 1 if any fails.

#include "oracles.hpp"

#include "ncqm/algebra.hpp"
#include "ncqm/cli.hpp"
#include "ncqm/fractional.hpp"
#include "ncqm/oracle.hpp"
#include "ncqm/ring.hpp"
#include "ncqm/spectra.hpp"
#include "ncqm/specfun.hpp"
#include "ncqm/wavefunctions.hpp"

#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace ncqm;
using oracle_ref::rel;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

spectra::QuantumNumbers qn_of(int n, int m) { return {n, m, n + m, n}; }

double max_abs(const algebra::SpMat& m) {
    double w = 0.0;
    for (int k = 0; k < m.outerSize(); ++k)
        for (algebra::SpMat::InnerIterator it(m, k); it; ++it) w = std::max(w, std::abs(it.value()));
    return w;
}

Outcome ac1_algebra() {
    Outcome o;
    PhysicalConstants c;
    const auto rep = algebra::build_heisenberg_rep(30, c, 1.0);
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const double th = u(rng), et = u(rng);
        const auto m = algebra::sw_forward(rep, th, et);
        for (const auto& e : algebra::commutator_residuals(m, {th, et, effective_planck(th, et, c), 0.0}))
            worst = std::max(worst, e.max_residual);
    }
    o.require(worst <= 1e-10, "max residual " + fmt(worst));
    if (o.pass) o.detail = "max residual " + fmt(worst) + " over 50 pairs";
    return o;
}

Outcome ac2_round_trip() {
    Outcome o;
    PhysicalConstants c;
    const auto rep = algebra::build_heisenberg_rep(30, c, 1.0);
    const double scale = max_abs(rep.x);
    double exact_err = 0.0;
    for (auto [th, et] : {std::pair{0.1, 0.05}, std::pair{0.5, -0.7}, std::pair{1.2, 0.9}}) {
        const auto back = algebra::sw_inverse(algebra::sw_forward(rep, th, et), th, et, true);
        exact_err = std::max({exact_err, max_abs(back.x - rep.x), max_abs(back.y - rep.y),
                              max_abs(back.px - rep.px), max_abs(back.py - rep.py)});
    }
    exact_err /= scale;
    o.require(exact_err <= 1e-12, "exact-k error " + fmt(exact_err));
    double worst_ratio = 1.0;
    for (auto [th, et] : {std::pair{0.02, 0.02}, std::pair{0.1, 0.2}, std::pair{0.3, 0.4}}) {
        const auto back = algebra::sw_inverse(algebra::sw_forward(rep, th, et), th, et, false);
        const double err = max_abs(back.x - rep.x) / scale;
        const double ratio = err / (th * et / 4.0);
        o.require(ratio >= 0.5 && ratio <= 2.0, "k=1 ratio " + fmt(ratio));
        worst_ratio = std::max(worst_ratio, std::max(ratio, 1.0 / ratio));
    }
    if (o.pass) o.detail = "exact-k error " + fmt(exact_err) + ", k=1 error / (theta eta/4) within " + fmt(worst_ratio);
    return o;
}

Outcome ac3_ec_spectrum() {
    Outcome o;
    std::mt19937 rng(21);
    std::uniform_real_distribution<double> u(0.3, 2.0);
    double worst_free = 0.0;
    int points = 0;
    for (double alpha : {1.5, 2.0, 3.0}) {
        for (int i = 0; i < 7; ++i) {
            ModelParams p;
            p.eta0 = u(rng);
            p.e_ref = u(rng);
            p.alpha_exp = alpha;
            const auto qn = qn_of(i % 3, i % 2);
            worst_free = std::max(worst_free, rel(spectra::ec_solve_energy(qn, p).energy,
                                                  spectra::ec_free_energy_closed(qn, p)));
            ++points;
        }
    }
    o.require(worst_free <= 1e-9, "free closed form " + fmt(worst_free));

    ModelParams osc;
    osc.eta0 = 0.1;
    osc.theta0 = 0.1;
    osc.e_ref = 10.0;
    osc.constants.spring_k = 1.0;
    double worst_oracle = 0.0;
    for (auto [n, m] : {std::pair{0, 0}, std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 0}, std::pair{0, 3},
                        std::pair{1, 1}}) {
        const double root = spectra::ec_solve_energy(qn_of(n, m), osc).energy;
        const auto sc = oracle::self_consistent_wrap(oracle::OracleKind::radial_fd, osc, qn_of(n, m));
        worst_oracle = std::max(worst_oracle, rel(sc.energy, root));
    }
    o.require(worst_oracle <= 1e-6, "oracle " + fmt(worst_oracle));
    if (o.pass)
        o.detail = "free closed form " + fmt(worst_free) + " on " + std::to_string(points) +
                   " points, self-consistent oracle " + fmt(worst_oracle) + " on 6 levels";
    return o;
}

Outcome ac4_commutative() {
    Outcome o;
    PhysicalConstants c;
    c.spring_k = 2.0;
    c.mass = 0.5;
    const double omega = 2.0;
    int exact_misses = 0;
    double worst_small = 0.0;
    for (int n = 0; n < 4; ++n) {
        for (int m = 0; m < 4; ++m) {
            const auto qn = qn_of(n, m);
            const double expect = c.hbar * omega * (2 * n + m + 1);
            ModelParams p;
            p.constants = c;
            if (spectra::ec_solve_energy(qn, p).energy != expect) ++exact_misses;
            p.mechanism = Mechanism::sqf;
            if (spectra::sqf_oscillator_spectrum(p, 0.7, qn) != expect) ++exact_misses;
            if (spectra::commutative_spectrum(qn, omega, c) != expect) ++exact_misses;  // EO limit
            if (spectra::fixed_coefficient_level(qn, c.mass, 0.0, c.spring_k, c) != expect) ++exact_misses;

            // Small but nonzero noncommutativity: E / E0 ~ 1e-6.
            ModelParams q;
            q.constants = c;
            q.eta0 = 1.0;
            q.theta0 = 1.0;
            q.e_ref = expect * 1e6;
            worst_small = std::max(worst_small, rel(spectra::ec_solve_energy(qn, q).energy, expect));
            q.mechanism = Mechanism::sqf;
            worst_small = std::max(worst_small, rel(spectra::sqf_oscillator_spectrum(q, expect, qn), expect));
        }
    }
    o.require(exact_misses == 0, std::to_string(exact_misses) + " inexact levels");
    o.require(worst_small <= 1e-5, "E/E0=1e-6 deviation " + fmt(worst_small));
    if (o.pass) o.detail = "exact for EC, SQF, EO limit; E/E0=1e-6 deviation " + fmt(worst_small);
    return o;
}

Outcome ac5_wavefunctions() {
    Outcome o;
    double ode = 0.0, norm = 0.0, ortho = 0.0;
    for (int n = 0; n <= 4; ++n) {
        for (int m = 0; m <= 4; ++m) {
            const double c_big = 2.0 * (2 * n + m + 1);
            auto r = [&](double xi) { return wave::radial_laguerre(n, m, xi); };
            for (double xi = 0.1; xi <= 6.0; xi += 0.05)
                ode = std::max(ode, oracle_ref::radial_ode_residual(r, c_big, m, xi));
            const double lam = 0.37;
            const double cn = wave::normalization_constant(n, m, lam);
            const double rmax = std::sqrt((c_big + 80.0) / lam);
            const double q = oracle_ref::integrate(
                [&](double rr) {
                    const double v = cn * wave::radial_laguerre(n, m, std::sqrt(lam) * rr);
                    return v * v * rr;
                },
                0.0, rmax, 80);
            norm = std::max(norm, std::abs(q - 1.0));
            const double id = oracle_ref::integrate(
                [&](double x) {
                    const double l = specfun::laguerre(n, m, x);
                    return std::exp(-x) * std::pow(x, m) * l * l;
                },
                0.0, 120.0, 240);
            ortho = std::max(ortho, rel(id, std::exp(specfun::log_factorial(n + m) - specfun::log_factorial(n))));
        }
    }
    o.require(ode <= 1e-8, "ODE residual " + fmt(ode));
    o.require(norm <= 1e-8, "density integral " + fmt(norm));
    o.require(ortho <= 1e-8, "orthonormalization " + fmt(ortho));
    if (o.pass)
        o.detail = "ODE residual " + fmt(ode) + ", |norm - 1| " + fmt(norm) + ", (n+a)!/n! identity " + fmt(ortho);
    return o;
}

Outcome ac6_fractional() {
    Outcome o;
    double series = 0.0, rl = 0.0;
    const fractional::PowerSeriesFn id_series{0.5, {0.0, 0.0, 1.0}};
    auto id = [](double t) { return t; };
    for (double x : {0.25, 1.0, 2.0, 4.0}) {
        const double exact = 2 * std::sqrt(x / std::numbers::pi);
        series = std::max(series, rel(fractional::caputo_series_derivative(id_series, x), exact));
        rl = std::max(rl, rel(fractional::riemann_liouville(id, 0.5, x), exact));
    }
    o.require(series <= 1e-8, "series " + fmt(series));
    o.require(rl <= 1e-8, "quadrature " + fmt(rl));

    const double exact = 2 * std::sqrt(1.0 / std::numbers::pi);
    const double g1 = fractional::grunwald_letnikov(id, 0.5, 1.0, 1e-3);
    const double g2 = fractional::grunwald_letnikov(id, 0.5, 1.0, 5e-4);
    const double e1 = std::abs(g1 - exact), e2 = std::abs(g2 - exact);
    const double order_ratio = e1 / e2;
    const double rich = std::abs(2 * g2 - g1 - exact);
    o.require(std::abs(order_ratio - 2.0) < 0.1, "GL order ratio " + fmt(order_ratio));
    o.require(rich < 0.05 * e2, "Richardson " + fmt(rich));

    double ce = 0.0;
    for (double nu : {0.1, 0.25, 0.5, 0.75, 0.95}) {
        for (double x = 0.05; x <= 10.0; x += 0.35) {
            double sum = 0.0;
            for (int n = 1; n < 200; ++n) {
                const double t = std::exp((n - nu) * std::log(x) - std::lgamma(n + 1 - nu));
                sum += t;
                if (n > x + 5 && t < 1e-18 * sum) break;
            }
            ce = std::max(ce, rel(fractional::caputo_exp(nu, x), sum));
        }
    }
    o.require(ce <= 1e-10, "caputo_exp " + fmt(ce));

    PhysicalConstants c;
    c.hbar = 0.5;
    const bool pw = fractional::plane_wave_eigenvalue(1.0, 1.5, c).value == std::complex<double>(0.0, -3.0) &&
                    fractional::plane_wave_eigenvalue(2.0, 1.5, c).value == std::complex<double>(-9.0, 0.0);
    o.require(pw, "plane-wave integer orders not exact");
    if (o.pass)
        o.detail = "half-derivative series " + fmt(series) + ", quadrature " + fmt(rl) + ", GL ratio " +
                   fmt(order_ratio) + ", caputo_exp " + fmt(ce) + ", plane wave exact";
    return o;
}

Outcome ac7_fractional_oscillator() {
    Outcome o;
    PhysicalConstants c;
    spectra::FractionalOscSpec g;
    g.alpha_p = 1.5;
    g.beta_p = 3.0;
    g.d_alpha = 0.8;
    g.q = 1.3;
    const double mu = spectra::fractional_oscillator_exponent(g);
    o.require(mu == 1.5 * 3.0 / (1.5 + 3.0), "exponent " + fmt(mu));
    double ratio_err = 0.0;
    for (int n = 0; n < 8; ++n) {
        const double r = spectra::fractional_oscillator_levels(g, n + 1, c) / spectra::fractional_oscillator_levels(g, n, c);
        ratio_err = std::max(ratio_err, rel(r, std::pow((n + 1.5) / (n + 0.5), mu)));
    }
    o.require(ratio_err <= 1e-14, "ratio law " + fmt(ratio_err));

    const double a = 1.0 / g.beta_p, b = 1.0 / g.alpha_p + 1.0;
    const double beta_q = oracle_ref::tanh_sinh(
        [&](double t) { return std::pow(t, a - 1) * std::pow(1 - t, b - 1); }, 0.0, 1.0);
    const double pref = std::pow(std::numbers::pi * c.hbar * g.beta_p * std::pow(g.d_alpha, 1 / g.alpha_p) *
                                     std::pow(g.q, 2 / g.beta_p) / (2 * beta_q),
                                 mu);
    const double pe = rel(spectra::fractional_oscillator_prefactor(g, c), pref);
    o.require(pe <= 1e-8, "prefactor " + fmt(pe));
    if (o.pass) o.detail = "exponent exact, ratio law " + fmt(ratio_err) + ", prefactor vs quadrature " + fmt(pe);
    return o;
}

Outcome ac8_ring() {
    Outcome o;
    ring::RingSpec s;
    s.radius = 1.3;
    s.alpha_param = 0.9;
    s.m_star = 0.7;
    const double eta = 0.05;
    const double phi0 = ring::flux_quantum(s);

    double worst = 0.0;
    for (double phi : {-0.3, 0.2, 0.8}) {
        for (int l = -1; l <= 1; ++l) {
            auto e_at = [&](double f) {
                ring::RingSpec t = s;
                t.flux_ext = f * phi0;
                return ring::ring_levels(t, eta, l);
            };
            s.flux_ext = phi * phi0;
            const double exact = ring::persistent_current(s, eta, l);
            double prev = INFINITY;
            for (double h : {0.1, 0.05, 0.025}) {
                const double fd = -(e_at(phi + h) - e_at(phi - h)) / (2 * h * phi0);
                const double err = std::abs(fd - exact);
                // Second order: each halving cuts the error by 4 until rounding takes over.
                o.require(err <= prev / 4.0 + 1e-12, "FD error not O(h^2)");
                prev = err;
                worst = std::max(worst, err);
            }
        }
    }
    o.require(worst <= 1e-9, "FD current " + fmt(worst));

    double period = 0.0;
    for (double phi : {-0.7, 0.1, 1.4}) {
        s.flux_ext = phi * phi0;
        ring::RingSpec shifted = s;
        shifted.flux_ext += phi0;
        for (int l = -2; l <= 2; ++l)
            period = std::max(period, std::abs(ring::ring_levels(shifted, eta, l - 1) - ring::ring_levels(s, eta, l)));
    }
    o.require(period <= 1e-12, "periodicity " + fmt(period));

    s.flux_ext = ring::nc_flux(s, eta);
    const double zero = ring::ground_current(s, eta);
    o.require(zero == 0.0, "current at phi_nc " + fmt(zero));
    if (o.pass) o.detail = "FD current " + fmt(worst) + ", periodicity " + fmt(period) + ", current at phi_nc exactly 0";
    return o;
}

Outcome ac9_discrepancy() {
    Outcome o;
    const char* argv[] = {"ncqm", "verify"};
    std::ostringstream out, err;
    const int code = cli::run(2, argv, out, err);
    o.require(code == 0, "verify exit code " + std::to_string(code));
    std::string status = "missing";
    try {
        const auto j = nlohmann::json::parse(out.str());
        for (const auto& c : j.at("checks"))
            if (c.at("name") == "bogoliubov_vs_matrix") status = c.at("status").get<std::string>();
    } catch (const std::exception& e) {
        o.require(false, std::string("bad verify JSON: ") + e.what());
    }
    o.require(status == "expected_divergence", "bogoliubov entry status " + status);
    if (o.pass) o.detail = "verify lists bogoliubov_vs_matrix as expected_divergence, exit 0";
    return o;
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<Outcome()> run;
    };
    const Criterion all[] = {
        {"AC1 algebra fidelity", ac1_algebra},
        {"AC2 round trip", ac2_round_trip},
        {"AC3 EC spectrum consistency", ac3_ec_spectrum},
        {"AC4 commutative recovery", ac4_commutative},
        {"AC5 wave functions", ac5_wavefunctions},
        {"AC6 fractional operators", ac6_fractional},
        {"AC7 fractional oscillator", ac7_fractional_oscillator},
        {"AC8 ring model", ac8_ring},
        {"AC9 known discrepancy", ac9_discrepancy},
    };
    int failed = 0;
    for (const auto& c : all) {
        Outcome r;
        try {
            r = c.run();
        } catch (const std::exception& e) {
            r.pass = false;
            r.detail = std::string("exception: ") + e.what();
        }
        if (!r.pass) ++failed;
        std::printf("[%s] %s: %s\n", r.pass ? "PASS" : "FAIL", c.name, r.detail.c_str());
    }
    std::printf("%d/9 criteria passed\n", 9 - failed);
    return failed == 0 ? 0 : 1;
}
