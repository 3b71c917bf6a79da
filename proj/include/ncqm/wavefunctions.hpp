#pragma once

// Radial wave functions of the energy-dependent 2D problem, with
// xi = sqrt(lambda) r, lambda = sqrt(m* K_h) / hbar, and the radial equation
//   R'' + R'/xi + (C - xi^2 - m^2/xi^2) R = 0,
//   C = 2 sqrt(m*) [E + m hbar B_h] / (hbar sqrt(K_h)).
// Near the origin (xi^2 << C) the xi^2 term is negligible and R ~ J_m(sqrt(C) xi);
// the normalizable solution needs C = 2(2n + m + 1) and is a Laguerre function.

#include "ncqm/params.hpp"
#include "ncqm/spectra.hpp"

#include <complex>
#include <vector>

namespace ncqm::wave {

using cplx = std::complex<double>;

enum class Regime { bessel, laguerre };

struct RadialSolution {
    Regime regime = Regime::laguerre;
    int n = 0;
    int m_phi = 0;
    double energy = 0.0;
    double lambda_scale = 0.0;
    double c_norm = 1.0;
    double c_big = 0.0;

    double xi(double r) const;
    double operator()(double r) const;
};

double radial_bessel(int m_phi, double c_big, double xi);
double radial_laguerre(int n, int m_phi, double xi);

/// True when xi^2 <= threshold * C, the window where the Bessel form holds.
bool in_bessel_window(double c_big, double xi, double threshold = 0.1);

/// c such that int_0^inf [c R_nm(sqrt(lambda) r)]^2 r dr = 1: sqrt(2 lambda n!/(n+m)!).
double normalization_constant(int n, int m_phi, double lambda_scale);

/// The unsquared expression 2 lambda n!/(n+m)!, which is c^2.
double normalization_constant_literal(int n, int m_phi, double lambda_scale);

/// lambda and C at the given energy.
double lambda_scale(double energy, const ModelParams& p);
double c_big(double energy, int m_phi, const ModelParams& p);

/// Builds the solution at `energy`. Laguerre regime when C matches
/// 2(2n + m + 1) within rel_tol (the energy is a level), Bessel otherwise.
RadialSolution radial_solution(double energy, const spectra::QuantumNumbers& qn,
                               const ModelParams& p, double rel_tol = 1e-8);

/// exp[-sqrt(m k0 / 8 hbar^2)(E/E0)^alpha r^2], k0 = eta0^2 / 4 m hbar^2.
double ground_state_free(double r, double energy, const ModelParams& p);

/// omega sqrt{[1 + (eta0^2 / 8 m^2 omega^2 hbar^2)(E/E0)^(2 alpha)] /
///            [1 + (m^2 omega^2 theta0 / 4 hbar^2)(E/E0)^beta]}
double omega_eff(double energy, const ModelParams& p);

/// exp[-m omega_eff r^2 / 2 hbar]
double ground_state_oscillator(double r, double energy, const ModelParams& p);

/// theta(E) / 2
double nonlocality_bound(double energy, const ModelParams& p);

// ------------------------------------------------------------ grid fields

/// Uniform grid, sample (ix, iy) at (x0 + ix dx, y0 + iy dy), stored at iy * nx + ix.
struct GridField {
    int nx = 0;
    int ny = 0;
    double x0 = 0.0;
    double y0 = 0.0;
    double dx = 1.0;
    double dy = 1.0;
    std::vector<cplx> values;

    void validate() const;
    bool same_grid(const GridField& o) const;
    double x(int ix) const { return x0 + ix * dx; }
    double y(int iy) const { return y0 + iy * dy; }
    cplx& at(int ix, int iy) { return values[static_cast<std::size_t>(iy) * nx + ix]; }
    const cplx& at(int ix, int iy) const { return values[static_cast<std::size_t>(iy) * nx + ix]; }
};

/// sum |psi|^2 (1 - dV/dE) dx dy; dV/dE > 1 anywhere is a NormalizabilityError.
double modified_norm(const GridField& psi, const std::vector<double>& dv_de);

/// [V(E2) - V(E1)] / (E2 - E1) pointwise.
std::vector<double> orthogonality_kernel(const std::vector<double>& v_e1,
                                         const std::vector<double>& v_e2, double e1, double e2);

enum class CurrentConvention {
    hbar_squared,  // -(hbar^2 / 2im)[psi* grad phi - phi grad psi*]
    standard,  // (hbar / 2im)[psi* grad phi - phi grad psi*]
};

struct VectorField {
    std::vector<cplx> jx;
    std::vector<cplx> jy;
};

/// Second-order central differences, one-sided second-order at the edges.
VectorField gradient(const GridField& f);
std::vector<cplx> divergence(const VectorField& j, const GridField& grid);

VectorField probability_current(const GridField& psi, const GridField& phi,
                                const PhysicalConstants& c,
                                CurrentConvention conv = CurrentConvention::hbar_squared);

}  // namespace ncqm::wave
