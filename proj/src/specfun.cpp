#include "ncqm/specfun.hpp"

#include "ncqm/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

namespace ncqm::specfun {

namespace {

using std::numbers::pi;

// Lanczos approximation, g = 7, nine terms.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

const double kSqrtTwoPi = std::sqrt(2.0 * pi);

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

template <class T>
T lanczos_sum(T zm1) {
    T a = kLanczos[0];
    for (std::size_t i = 1; i < kLanczos.size(); ++i) a += kLanczos[i] / (zm1 + double(i));
    return a;
}

// Gamma(x) for x >= 0.5.
double gamma_right(double x) {
    const double z = x - 1.0;
    const double t = z + kLanczosG + 0.5;
    // t^(z+1/2) is split in two halves so Gamma(171) does not overflow midway.
    const double half = std::pow(t, 0.5 * (z + 0.5));
    return half * std::exp(-t) * kSqrtTwoPi * lanczos_sum(z) * half;
}

double lgamma_right(double x) {
    const double z = x - 1.0;
    const double t = z + kLanczosG + 0.5;
    return (z + 0.5) * std::log(t) - t + std::log(kSqrtTwoPi * lanczos_sum(z));
}

}  // namespace

void SeriesControl::validate() const {
    if (max_terms < 1) throw ValidationError("max_terms must be at least 1");
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
        throw ValidationError("series tolerances must be positive");
    }
}

double gamma_fn(double x) {
    if (std::isnan(x)) throw DomainError("gamma_fn of NaN");
    if (is_nonpositive_integer(x)) throw DomainError("gamma_fn pole at non-positive integer");
    if (x < 0.5) return pi / (std::sin(pi * x) * gamma_right(1.0 - x));
    return gamma_right(x);
}

std::complex<double> gamma_fn(std::complex<double> z) {
    if (z.imag() == 0.0) return gamma_fn(z.real());
    if (z.real() < 0.5) {
        return pi / (std::sin(pi * z) * gamma_fn(1.0 - z));
    }
    const std::complex<double> zm1 = z - 1.0;
    const std::complex<double> t = zm1 + kLanczosG + 0.5;
    return kSqrtTwoPi * std::pow(t, zm1 + 0.5) * std::exp(-t) * lanczos_sum(zm1);
}

double lgamma_fn(double x) {
    if (is_nonpositive_integer(x)) throw DomainError("lgamma_fn pole at non-positive integer");
    if (x < 0.5) return std::log(pi / std::abs(std::sin(pi * x))) - lgamma_right(1.0 - x);
    return lgamma_right(x);
}

double rgamma(double x) {
    if (is_nonpositive_integer(x)) return 0.0;
    if (x > 170.0) return std::exp(-lgamma_right(x));
    return 1.0 / gamma_fn(x);
}

double log_factorial(int n) {
    if (n < 0) throw DomainError("log_factorial of a negative integer");
    if (n <= 170) {
        double f = 1.0;
        for (int k = 2; k <= n; ++k) f *= k;
        return std::log(f);
    }
    return lgamma_right(n + 1.0);
}

double beta_fn(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw DomainError("beta_fn needs positive arguments");
    if (a + b < 170.0) return gamma_fn(a) * gamma_fn(b) / gamma_fn(a + b);
    return std::exp(lgamma_right(a) + lgamma_right(b) - lgamma_right(a + b));
}

// ---------------------------------------------------------------- Bessel

namespace {

constexpr double kSeriesLimit = 2.0;

double bessel_j_series(int m, double x) {
    const double h = 0.5 * x;
    const double h2 = h * h;
    double term = std::exp(m * std::log(h) - log_factorial(m));
    double sum = term;
    for (int k = 1; k < 200; ++k) {
        term *= -h2 / (double(k) * double(k + m));
        sum += term;
        if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
    }
    return sum;
}

bool use_hankel(int m, double x) { return x > 25.0 + 0.5 * double(m) * double(m); }

// Hankel asymptotic P, Q for integer order.
void hankel_pq(int m, double x, double& p, double& q) {
    const double mu = 4.0 * double(m) * double(m);
    p = 1.0;
    q = 0.0;
    double t = 1.0;
    double prev = 1.0;
    for (int k = 1; k < 200; ++k) {
        const double odd = 2.0 * k - 1.0;
        t *= (mu - odd * odd) / (k * 8.0 * x);
        if (std::abs(t) > std::abs(prev) && k > m) break;  // series turned divergent
        const int r = k % 4;
        if (r == 1) q += t;
        else if (r == 2) p -= t;
        else if (r == 3) q -= t;
        else p += t;
        if (std::abs(t) < 1e-17) break;
        prev = t;
    }
}

void hankel_jy(int m, double x, double& j, double& y) {
    double p = 0.0;
    double q = 0.0;
    hankel_pq(m, x, p, q);
    const double chi = x - (0.5 * m + 0.25) * pi;
    const double amp = std::sqrt(2.0 / (pi * x));
    const double c = std::cos(chi);
    const double s = std::sin(chi);
    j = amp * (p * c - q * s);
    y = amp * (p * s + q * c);
}

// J_0..J_N by Miller's backward recurrence, normalized with
// J_0 + 2 sum J_2k = 1. N is returned through the vector length.
std::vector<double> miller_j(int nmin, double x) {
    const double big = std::max(double(nmin), x);
    int start = int(big) + 20 + int(std::sqrt(60.0 * big));
    start += start % 2;
    std::vector<double> j(static_cast<std::size_t>(start) + 2, 0.0);
    j[start] = 1e-30;
    for (int k = start; k >= 1; --k) {
        j[k - 1] = 2.0 * k / x * j[k] - j[k + 1];
        if (std::abs(j[k - 1]) > 1e250) {
            for (int i = k - 1; i <= start; ++i) j[i] *= 1e-250;
        }
    }
    double norm = j[0];
    for (int k = 2; k <= start; k += 2) norm += 2.0 * j[k];
    for (double& v : j) v /= norm;
    return j;
}

}  // namespace

double bessel_j(int order, double x) {
    if (order < 0) throw DomainError("bessel_j order must be non-negative");
    if (!(x >= 0.0)) throw DomainError("bessel_j argument must be non-negative");
    if (x == 0.0) return order == 0 ? 1.0 : 0.0;
    if (x <= kSeriesLimit) return bessel_j_series(order, x);
    if (use_hankel(order, x)) {
        double j = 0.0;
        double y = 0.0;
        hankel_jy(order, x, j, y);
        return j;
    }
    return miller_j(order, x)[order];
}

double bessel_y(int order, double x) {
    if (order < 0) throw DomainError("bessel_y order must be non-negative");
    if (!(x >= 0.0)) throw DomainError("bessel_y argument must be non-negative");
    if (x == 0.0) throw SingularityError("bessel_y is singular at x = 0");

    double y0 = 0.0;
    double y1 = 0.0;
    if (use_hankel(1, x)) {
        double j = 0.0;
        hankel_jy(0, x, j, y0);
        hankel_jy(1, x, j, y1);
    } else {
        // Neumann series in J_k, all taken from one backward recurrence.
        const auto j = miller_j(1, x);
        const int top = int(j.size()) - 2;
        const double l = std::log(0.5 * x) + kEulerGamma;
        double s0 = 0.0;
        double s1 = 0.0;
        for (int k = 1; 2 * k + 1 <= top; ++k) {
            const double sign = (k % 2 == 0) ? 1.0 : -1.0;
            s0 += sign * j[2 * k] / k;
            s1 += sign * (j[2 * k - 1] - j[2 * k + 1]) / k;
        }
        y0 = (2.0 / pi) * (l * j[0] - 2.0 * s0);
        y1 = -(2.0 / pi) * (j[0] / x - l * j[1] - s1);
    }
    if (order == 0) return y0;
    double prev = y0;
    double cur = y1;
    for (int k = 1; k < order; ++k) {
        const double next = 2.0 * k / x * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

double bessel_j_prime(int order, double x) {
    if (order == 0) return -bessel_j(1, x);
    return 0.5 * (bessel_j(order - 1, x) - bessel_j(order + 1, x));
}

double bessel_y_prime(int order, double x) {
    if (order == 0) return -bessel_y(1, x);
    return 0.5 * (bessel_y(order - 1, x) - bessel_y(order + 1, x));
}

double laguerre(int n, double a, double x) {
    if (n < 0) throw DomainError("laguerre degree must be non-negative");
    if (!(a > -1.0)) throw DomainError("laguerre parameter must exceed -1");
    double prev = 1.0;
    if (n == 0) return prev;
    double cur = 1.0 + a - x;
    for (int k = 1; k < n; ++k) {
        const double next = ((2.0 * k + 1.0 + a - x) * cur - (k + a) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

double mittag_leffler(double alpha, double beta, double z, const SeriesControl& ctl,
                      double z_limit) {
    ctl.validate();
    if (!(alpha > 0.0)) throw DomainError("mittag_leffler needs alpha > 0");
    if (!std::isfinite(z) || std::abs(z) > z_limit) {
        throw DomainError("mittag_leffler argument outside the series regime");
    }
    if (z == 0.0) return rgamma(beta);

    const double logz = std::log(std::abs(z));
    double sum = 0.0;
    double prev_mag = INFINITY;
    int quiet = 0;
    for (int k = 0; k < ctl.max_terms; ++k) {
        const double arg = alpha * k + beta;
        double term = 0.0;
        if (arg > 1.0) {
            term = std::exp(k * logz - lgamma_right(arg));
            if (z < 0.0 && k % 2 == 1) term = -term;
        } else {
            term = std::pow(z, k) * rgamma(arg);
        }
        sum += term;
        const double mag = std::abs(term);
        if (mag <= ctl.rel_tol * std::abs(sum) + ctl.abs_tol && mag <= prev_mag) {
            if (++quiet >= 2) return sum;
        } else {
            quiet = 0;
        }
        if (arg > 1.0) prev_mag = mag;
    }
    throw ConvergenceError("mittag_leffler series did not converge within max_terms");
}

}  // namespace ncqm::specfun
