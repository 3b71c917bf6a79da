#pragma once

// Special functions used by the spectra, wavefunction and fractional code.
// Everything here is implemented from scratch; accuracy envelopes:
//   gamma_fn        relative 1e-12 on (0, 171)
//   bessel_j/y      absolute 1e-10 for x <= 50, order <= 20
//   laguerre        three-term recurrence, exact for integer data up to roundoff
//   mittag_leffler  series summed to the requested tolerance, |z| <= z_limit

#include <complex>

namespace ncqm::specfun {

struct SeriesControl {
    int max_terms = 20000;
    double abs_tol = 1e-300;
    double rel_tol = 1e-16;

    void validate() const;
};

inline constexpr double kEulerGamma = 0.57721566490153286060651209;

double gamma_fn(double x);
std::complex<double> gamma_fn(std::complex<double> z);

/// log|Gamma(x)| for real x off the poles.
double lgamma_fn(double x);

/// 1 / Gamma(x); zero at the poles instead of throwing.
double rgamma(double x);

/// log(n!) through lgamma_fn, usable far beyond where n! overflows.
double log_factorial(int n);

double beta_fn(double a, double b);

double bessel_j(int order, double x);
double bessel_y(int order, double x);

/// J'_m and Y'_m from the standard recurrence (J_{m-1} - J_{m+1}) / 2.
double bessel_j_prime(int order, double x);
double bessel_y_prime(int order, double x);

/// Generalized Laguerre polynomial L_n^{(a)}(x).
double laguerre(int n, double a, double x);

/// E_{alpha,beta}(z) = sum_k z^k / Gamma(alpha k + beta).
double mittag_leffler(double alpha, double beta, double z, const SeriesControl& ctl = {},
                      double z_limit = 30.0);

}  // namespace ncqm::specfun
