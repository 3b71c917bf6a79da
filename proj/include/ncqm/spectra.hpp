#pragma once

// Energy levels for the SQF, EC and EO mechanisms, the commutative limit and
// the fractional oscillator.

#include "ncqm/params.hpp"

#include <string_view>

namespace ncqm::spectra {

struct QuantumNumbers {
    int n = 0;
    int m_phi = 0;
    int n_alpha = 0;
    int n_beta = 0;

    void validate() const;
};

enum class Method { closed_form, root_find, first_order };
std::string_view to_string(Method m);

struct SpectrumResult {
    double energy = 0.0;
    Method method = Method::closed_form;
    double residual = 0.0;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    int roots_found = 1;  // sign changes seen in the scan
};

struct ScanControl {
    double points_per_decade = 200.0;
    double tol = 1e-10;  // absolute bound on the quantization residual
};

/// Laskin-type oscillator H = D |p|^alpha_p + q^2 |x|^beta_p.
struct FractionalOscSpec {
    double alpha_p = 2.0;
    double beta_p = 2.0;
    double d_alpha = 0.5;
    double q = 0.0;

    void validate() const;
};

/// hbar (omega_eps + B_e)(n_alpha + n_beta + 1) at the SQF energy scale eps.
double sqf_free_spectrum(const ModelParams& p, double eps, const QuantumNumbers& qn);

/// hbar (sqrt(K_h / m*) + B_h)(n_alpha + n_beta + 1) at the SQF energy scale eps.
double sqf_oscillator_spectrum(const ModelParams& p, double eps, const QuantumNumbers& qn);

/// (hbar / sqrt(m*))(2n + m + 1) - [E + m hbar B_h(E)] / sqrt(K_h(E)).
double ec_quantization_residual(double energy, const QuantumNumbers& qn, const ModelParams& p);

/// Smallest root of the quantization residual in [lo, hi]. The bracket is
/// scanned on a geometric grid first; the count of sign changes is reported.
SpectrumResult ec_solve_energy(const QuantumNumbers& qn, const ModelParams& p, double lo,
                               double hi, const ScanControl& ctl = {});

/// Same with a wide default bracket around the natural energy scale.
SpectrumResult ec_solve_energy(const QuantumNumbers& qn, const ModelParams& p,
                               const ScanControl& ctl = {});

/// Closed-form free-particle level for alpha != 1. Returns NaN-free values
/// only when 2n + (1 - sqrt 2) m + 1 > 0; otherwise DomainError.
double ec_free_energy_closed(const QuantumNumbers& qn, const ModelParams& p);

/// alpha = 1 free particle: the spectrum is not discrete, instead e_ref must
/// equal hbar sqrt(k0 / 2m)[2n + (1 - sqrt 2) m + 1].
bool ec_free_alpha1_constraint(const QuantumNumbers& qn, const ModelParams& p,
                               double rel_tol = 1e-12);

/// First-order oscillator result for alpha = beta = 1 in the x = E / E0 form.
double ec_oscillator_first_order(const QuantumNumbers& qn, const ModelParams& p);

/// The same approximation as an energy.
double ec_oscillator_first_order_energy(const QuantumNumbers& qn, const ModelParams& p);

double commutative_spectrum(const QuantumNumbers& qn, double omega, const PhysicalConstants& c);

/// Level of the frozen-coefficient radial problem:
/// hbar sqrt(K / m*)(2n + m + 1) - m hbar B.
double fixed_coefficient_level(const QuantumNumbers& qn, double m_star, double b_field,
                               double k_elastic, const PhysicalConstants& c);

double fractional_oscillator_exponent(const FractionalOscSpec& spec);
double fractional_oscillator_prefactor(const FractionalOscSpec& spec, const PhysicalConstants& c);
double fractional_oscillator_levels(const FractionalOscSpec& spec, int n, const PhysicalConstants& c);

struct EoRadialParams {
    double xi_scale = 0.0;  // xi = xi_scale * r
    double sigma = 0.0;
};

EoRadialParams eo_alpha1_radial_params(double energy, const QuantumNumbers& qn, double b_i,
                                       double k_i, const PhysicalConstants& c);

/// sigma == 2(2n + m + 1) within rel_tol.
bool eo_alpha1_constraint(const QuantumNumbers& qn, double b_i, double k_i,
                          const PhysicalConstants& c, double rel_tol = 1e-12);

struct EoIdentification {
    double b_i = 0.0;
    double k_i = 0.0;
};

/// B_I, K_I that make the EO alpha = 1 radial equation coincide with the EC
/// alpha = 1 free-particle one: B_I = hbar B0 / E0, K_I = hbar^2 k_e0 / E0^2.
EoIdentification eo_from_ec_alpha1(const ModelParams& p);

}  // namespace ncqm::spectra
