#pragma once

// Reference computations for the tests. Nothing here calls into the
// library: quadrature nodes come from Newton on the Legendre recurrence,
// special functions from the C++ standard library or from explicit sums.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <utility>
#include <vector>

namespace oracle_ref {

struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// n-point Gauss-Legendre on [-1, 1].
inline GaussRule gauss_legendre(int n) {
    GaussRule g;
    g.nodes.resize(n);
    g.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        g.nodes[i] = -x;
        g.nodes[n - 1 - i] = x;
        g.weights[i] = g.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return g;
}

// Composite Gauss-Legendre with `panels` equal panels.
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        int panels = 64, int order = 20) {
    static thread_local GaussRule rule;
    if (static_cast<int>(rule.nodes.size()) != order) rule = gauss_legendre(order);
    const double w = (b - a) / panels;
    double sum = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * w;
        for (int i = 0; i < order; ++i) {
            sum += rule.weights[i] * f(lo + 0.5 * w * (rule.nodes[i] + 1.0));
        }
    }
    return 0.5 * w * sum;
}

// Double-exponential rule for integrands with endpoint singularities.
inline double tanh_sinh(const std::function<double(double)>& f, double a, double b,
                        double h = 1.0 / 64.0, double t_max = 4.0) {
    const double d = 0.5 * (b - a);
    double sum = 0.0;
    for (double t = -t_max; t <= t_max + 1e-12; t += h) {
        const double s = 0.5 * std::numbers::pi * std::sinh(t);
        const double u = std::tanh(s);
        const double w = 0.5 * std::numbers::pi * std::cosh(t) / (std::cosh(s) * std::cosh(s));
        // 1 - |u| without cancellation
        const double gap = std::exp(-std::abs(s)) / std::cosh(s);
        const double x = u > 0 ? b - d * gap : a + d * gap;
        if (x <= a || x >= b) continue;
        sum += w * f(x);
    }
    return d * h * sum;
}

// Explicit sum L_n^(a)(x) = sum_k (-1)^k C(n+a, n-k) x^k / k!.
inline double laguerre_explicit(int n, double a, double x) {
    double s = 0.0;
    for (int k = 0; k <= n; ++k) {
        const double binom = std::tgamma(n + a + 1.0) /
                             (std::tgamma(n - k + 1.0) * std::tgamma(a + k + 1.0));
        s += (k % 2 ? -1.0 : 1.0) * binom * std::pow(x, k) / std::tgamma(k + 1.0);
    }
    return s;
}

inline double mittag_leffler_sum(double alpha, double beta, double z, int terms = 200) {
    double s = 0.0;
    for (int k = 0; k < terms; ++k) {
        const double arg = alpha * k + beta;
        if (arg > 170.0) break;
        s += std::pow(z, k) / std::tgamma(arg);
    }
    return s;
}

// First and second derivatives by 6th-order central stencils.
inline std::pair<double, double> derivatives(const std::function<double(double)>& f, double x,
                                             double h) {
    const double fm3 = f(x - 3 * h), fm2 = f(x - 2 * h), fm1 = f(x - h), f0 = f(x);
    const double fp1 = f(x + h), fp2 = f(x + 2 * h), fp3 = f(x + 3 * h);
    const double d1 = (-fm3 + 9 * fm2 - 45 * fm1 + 45 * fp1 - 9 * fp2 + fp3) / (60 * h);
    const double d2 = (2 * fm3 - 27 * fm2 + 270 * fm1 - 490 * f0 + 270 * fp1 - 27 * fp2 +
                       2 * fp3) / (180 * h * h);
    return {d1, d2};
}

// Residual of R'' + R'/xi + (C - xi^2 - m^2/xi^2) R = 0, scaled by the size of
// the largest term so it is dimensionless.
inline double radial_ode_residual(const std::function<double(double)>& r, double c_big, int m,
                                  double xi, double h = 1e-3) {
    const auto [d1, d2] = derivatives(r, xi, h);
    const double v = r(xi);
    const double pot = (c_big - xi * xi - m * m / (xi * xi)) * v;
    const double res = d2 + d1 / xi + pot;
    const double scale = std::max({std::abs(d2), std::abs(d1 / xi), std::abs(c_big * v),
                                   std::abs(xi * xi * v), std::abs(m * m / (xi * xi) * v)});
    return std::abs(res) / std::max(scale, 1e-300);
}

inline double bisect(const std::function<double(double)>& f, double lo, double hi) {
    double flo = f(lo);
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = f(mid);
        if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace oracle_ref
