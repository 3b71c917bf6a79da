#include "ncqm/fractional.hpp"

#include "ncqm/errors.hpp"
#include "ncqm/quadrature.hpp"

#include <cmath>
#include <numbers>

namespace ncqm::fractional {

using specfun::gamma_fn;

void PowerSeriesFn::validate() const {
    if (!(alpha_grid > 0.0) || !std::isfinite(alpha_grid)) {
        throw ValidationError("power series exponent step must be positive");
    }
    if (!(radius > 0.0)) throw ValidationError("power series radius must be positive");
    for (double a : coeffs) {
        if (!std::isfinite(a)) throw ValidationError("power series coefficients must be finite");
    }
}

double caputo_series_derivative(const PowerSeriesFn& f, double x) {
    f.validate();
    if (!(x >= 0.0) || !(x < f.radius)) {
        throw DomainError("caputo_series_derivative: x outside [0, radius)");
    }
    const double a = f.alpha_grid;
    double sum = 0.0;
    for (std::size_t k = 0; k + 1 < f.coeffs.size(); ++k) {
        const double c = f.coeffs[k + 1];
        if (c == 0.0) continue;
        const double kd = double(k);
        const double ratio = gamma_fn(1.0 + (kd + 1.0) * a) / gamma_fn(1.0 + kd * a);
        const double power = (k == 0) ? 1.0 : std::pow(x, kd * a);
        sum += c * ratio * power;
    }
    return sum;
}

double caputo_exp(double order, double x, const specfun::SeriesControl& ctl) {
    if (!(order > 0.0) || order > 1.0) throw DomainError("caputo_exp order must be in (0, 1]");
    if (!(x >= 0.0)) throw DomainError("caputo_exp needs x >= 0");
    const double pre = (order == 1.0) ? 1.0 : std::pow(x, 1.0 - order);
    if (pre == 0.0) return 0.0;
    return pre * specfun::mittag_leffler(1.0, 2.0 - order, x, ctl);
}

double liouville_exp(double order, double k, double x) {
    if (!(order > 0.0)) throw DomainError("liouville_exp order must be positive");
    if (k < 0.0) throw DomainError("liouville_exp requires k >= 0");
    return std::pow(k, order) * std::exp(k * x);
}

namespace {

double binomial(int n, int k) {
    double b = 1.0;
    for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
    return b;
}

}  // namespace

double riemann_liouville(const std::function<double(double)>& f, double nu, double x,
                         const specfun::SeriesControl& quad) {
    quad.validate();
    if (!(nu > 0.0) || nu == std::floor(nu)) {
        throw DomainError("riemann_liouville order must be positive and non-integer");
    }
    if (!(x > 0.0)) throw DomainError("riemann_liouville needs x > 0");
    const int n = int(std::floor(nu)) + 1;
    const double s = n - nu;

    // int_0^y f(t)(y - t)^(s-1) dt = (1/s) int_0^(y^s) f(y - w^(1/s)) dw
    auto inner = [&](double y) {
        auto g = [&](double w) { return f(y - std::pow(w, 1.0 / s)); };
        return quad::gauss_kronrod(g, 0.0, std::pow(y, s), quad.abs_tol, quad.rel_tol,
                                   quad.max_terms)
                   .value /
               s;
    };

    // Central n-th difference on a symmetric stencil, then Richardson in h^2.
    auto central = [&](double h) {
        double acc = 0.0;
        for (int k = 0; k <= n; ++k) {
            const double sign = (k % 2 == 0) ? 1.0 : -1.0;
            acc += sign * binomial(n, k) * inner(x + (0.5 * n - k) * h);
        }
        return acc / std::pow(h, n);
    };

    constexpr int kLevels = 4;
    double table[kLevels][kLevels];
    double h = 0.2 * x / n;
    for (int i = 0; i < kLevels; ++i, h *= 0.5) {
        table[i][0] = central(h);
        double factor = 4.0;
        for (int j = 1; j <= i; ++j, factor *= 4.0) {
            table[i][j] = table[i][j - 1] + (table[i][j - 1] - table[i - 1][j - 1]) / (factor - 1.0);
        }
    }
    return table[kLevels - 1][kLevels - 1] / gamma_fn(s);
}

std::vector<double> grunwald_weights(double order, int n) {
    std::vector<double> w(static_cast<std::size_t>(n) + 1);
    w[0] = 1.0;
    for (int j = 1; j <= n; ++j) w[j] = w[j - 1] * (j - 1 - order) / j;
    return w;
}

double grunwald_letnikov(const std::function<double(double)>& f, double order, double x,
                         double h) {
    if (!(order > 0.0)) throw DomainError("grunwald_letnikov order must be positive");
    if (!(h > 0.0)) throw DomainError("grunwald_letnikov step must be positive");
    if (!(x >= 0.0)) throw DomainError("grunwald_letnikov needs x >= 0");
    const int n = int(std::floor(x / h + 1e-9));
    const auto w = grunwald_weights(order, n);
    double sum = 0.0;
    for (int j = n; j >= 0; --j) {
        if (w[j] != 0.0) sum += w[j] * f(x - j * h);
    }
    return sum / std::pow(h, order);
}

cplx quarter_turn_power(double r, double t) {
    if (t == std::floor(t)) {
        const long q = ((static_cast<long>(t) % 4) + 4) % 4;
        switch (q) {
            case 0: return {r, 0.0};
            case 1: return {0.0, r};
            case 2: return {-r, 0.0};
            default: return {0.0, -r};
        }
    }
    return std::polar(r, 0.5 * std::numbers::pi * t);
}

FractionalEigenvalue plane_wave_eigenvalue(double order, double energy,
                                           const PhysicalConstants& c) {
    if (!(order > 0.0)) throw DomainError("eigenvalue order must be positive");
    if (!(energy > 0.0)) throw DomainError("plane_wave_eigenvalue needs energy > 0");
    return {order, quarter_turn_power(std::pow(energy / c.hbar, order), -order)};
}

EoCoefficients eo_coefficients(const ModelParams& p, EoCase which) {
    if (p.mechanism != Mechanism::eo_i && p.mechanism != Mechanism::eo_ii) {
        throw UsageError("eo_coefficients needs mechanism eo_i or eo_ii");
    }
    const auto& c = p.constants;
    if (which == EoCase::I) {
        // i hbar / e_ref: a quarter turn.
        const double base = c.hbar / p.e_ref;
        return {p.eta0 * quarter_turn_power(std::pow(base, p.alpha_exp), p.alpha_exp),
                p.theta0 * quarter_turn_power(std::pow(base, p.beta_exp), p.beta_exp)};
    }
    // -hbar^2 / 2 m e_ref: a half turn.
    const double base = c.hbar * c.hbar / (2.0 * c.mass * p.e_ref);
    return {p.eta0 * quarter_turn_power(std::pow(base, p.alpha_exp), 2.0 * p.alpha_exp),
            p.theta0 * quarter_turn_power(std::pow(base, p.beta_exp), 2.0 * p.beta_exp)};
}

}  // namespace ncqm::fractional
