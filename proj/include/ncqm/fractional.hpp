#pragma once

// Fractional-calculus operators: Caputo derivative of power series and of the
// exponential, the Liouville exponential rule, the Riemann-Liouville operator
// by quadrature, a Grunwald-Letnikov sum, and the plane-wave eigenvalue used
// by the energy-operator mechanism.

#include "ncqm/params.hpp"
#include "ncqm/specfun.hpp"

#include <complex>
#include <functional>
#include <limits>
#include <vector>

namespace ncqm::fractional {

using cplx = std::complex<double>;

/// f(x) = sum_k coeffs[k] * x^(k * alpha_grid), trusted for 0 <= x < radius.
struct PowerSeriesFn {
    double alpha_grid = 1.0;
    std::vector<double> coeffs;
    double radius = std::numeric_limits<double>::infinity();

    void validate() const;
};

double caputo_series_derivative(const PowerSeriesFn& f, double x);

/// Caputo derivative of order in (0, 1] of e^x: x^(1-order) E_{1,2-order}(x).
double caputo_exp(double order, double x, const specfun::SeriesControl& ctl = {});

/// k^order e^(kx), k >= 0.
double liouville_exp(double order, double k, double x);

/// Quadrature control for riemann_liouville: max_terms bounds the bisection
/// depth, the tolerances go to the adaptive rule.
inline specfun::SeriesControl default_rl_control() { return {40, 1e-15, 1e-13}; }

/// (1 / Gamma(n - nu)) d^n/dx^n int_0^x f(t) (x - t)^(n - nu - 1) dt, n - 1 < nu < n.
/// The kernel singularity is removed with w = (x - t)^(n - nu); the outer
/// derivative is a central difference refined by Richardson extrapolation.
double riemann_liouville(const std::function<double(double)>& f, double nu, double x,
                         const specfun::SeriesControl& quad = default_rl_control());

/// Grunwald-Letnikov sum with lower terminal 0 and step h:
/// h^-order sum_j w_j f(x - j h), w_j = (-1)^j binom(order, j).
double grunwald_letnikov(const std::function<double(double)>& f, double order, double x,
                         double h);

/// Weights w_0..w_n of the Grunwald-Letnikov sum.
std::vector<double> grunwald_weights(double order, int n);

struct FractionalEigenvalue {
    double order = 1.0;
    cplx value;
};

/// a with D_t^order e^(-iEt/hbar) = a e^(-iEt/hbar): (E/hbar)^order e^(-i pi order / 2).
/// Integer orders are exact.
FractionalEigenvalue plane_wave_eigenvalue(double order, double energy,
                                           const PhysicalConstants& c);

enum class EoCase { I, II };

struct EoCoefficients {
    cplx eta_coeff;
    cplx theta_coeff;
};

/// Case I: eta0 (i hbar / e_ref)^alpha, theta0 (i hbar / e_ref)^beta.
/// Case II: eta0 (-hbar^2 / 2 m e_ref)^alpha, theta0 (-hbar^2 / 2 m e_ref)^beta.
EoCoefficients eo_coefficients(const ModelParams& p, EoCase which);

/// r * e^(i pi t / 2) on the principal branch, exact when t is an integer.
cplx quarter_turn_power(double r, double t);

}  // namespace ncqm::fractional
