#pragma once

// Model parameters and energy-dependent effective coefficients.
//
// The noncommutative strengths follow power laws in an energy scale,
//   theta(E) = theta0 (E / e_ref)^beta,   eta(E) = eta0 (E / e_ref)^alpha,
// and every coefficient of the effective quadratic Hamiltonian
//   H = p^2 / 2m* - B_h L_z + K_h r^2 / 2
// is derived from them. The same formulas serve the vacuum-fluctuation (SQF)
// and energy-coupling (EC) mechanisms; only the meaning of the energy
// argument differs.

#include <Eigen/Core>

#include <optional>
#include <string>
#include <string_view>

namespace ncqm {

enum class Mechanism { sqf, ec, eo_i, eo_ii };

std::string_view to_string(Mechanism m);
Mechanism mechanism_from_string(std::string_view s);

/// Natural units by default (hbar = m = 1). `spring_k` is zero for the free
/// particle; `charge` is only read by the ring model.
struct PhysicalConstants {
    double hbar = 1.0;
    double mass = 1.0;
    double charge = 1.0;
    double spring_k = 0.0;

    void validate() const;
};

struct ModelParams {
    double eta0 = 0.0;
    double theta0 = 0.0;
    double alpha_exp = 1.0;
    double beta_exp = 1.0;
    double e_ref = 1.0;
    Mechanism mechanism = Mechanism::ec;
    PhysicalConstants constants{};

    void validate() const;
};

struct Strengths {
    double theta = 0.0;
    double eta = 0.0;
};

struct RescaledStrengths {
    double theta_eff = 0.0;
    double eta_eff = 0.0;
    double xi_scale = 1.0;
};

struct EffectiveCoefficients {
    double theta = 0.0;
    double eta = 0.0;
    double b_e = 0.0;        // eta / 2 m hbar
    double k_e = 0.0;        // eta^2 / 8 m hbar^2
    double b_h = 0.0;        // b_e + k theta / 2 hbar
    double k_h = 0.0;        // k + k_e
    double m_star = 0.0;     // 1/m* = 1/m + k theta^2 / 4 hbar^2
    double hbar_eff = 0.0;
    double theta_eff = 0.0;
    double eta_eff = 0.0;
    double xi_scale = 1.0;
    std::optional<double> k_of_e;  // empty at the pole theta*eta = 4 hbar^2
    double omega = 0.0;      // sqrt(k / m)
    double omega_h = 0.0;    // sqrt(K_h / m*)
    double omega_eps = 0.0;  // sqrt(k_e / m)
};

/// (E / e_ref)^exponent with the E = 0 conventions used throughout:
/// 0^positive = 0, 0^0 = 1, 0^negative is a SingularityError.
double energy_ratio_power(double energy, double e_ref, double exponent);

Strengths nc_strengths(const ModelParams& p, double energy);

/// hbar (1 + theta eta / 4 hbar^2).
double effective_planck(double theta, double eta, const PhysicalConstants& c);

/// hbar {1 + Tr[theta eta] / 4 hbar^2} for 4x4 antisymmetric strength
/// matrices. The trace is of the plain matrix product.
double effective_planck_4d(const Eigen::Matrix4d& theta, const Eigen::Matrix4d& eta,
                           const PhysicalConstants& c);

/// Coefficient matrix of [x^mu, p^nu] / i hbar under the four-dimensional
/// map: delta^{mu nu} + theta^{mu a} eta^{nu a} / 4 hbar^2.
Eigen::Matrix4d xp_commutator_coefficients_4d(const Eigen::Matrix4d& theta,
                                              const Eigen::Matrix4d& eta,
                                              const PhysicalConstants& c);

/// Inverse-map factor 1 / (1 - theta eta / 4 hbar^2); returns exactly 1 when
/// `exact` is false.
double k_factor(double theta, double eta, const PhysicalConstants& c, bool exact = true);

RescaledStrengths rescaled_strengths(double theta, double eta, const PhysicalConstants& c);

EffectiveCoefficients effective_coefficients(const ModelParams& p, double energy);

// JSON with keys eta0, theta0, alpha, beta, e_ref, mechanism, hbar, mass,
// charge, spring_k. Missing keys keep their defaults; unknown keys, wrong
// types and invalid values raise ValidationError.
ModelParams params_from_json_text(std::string_view text);
std::string params_to_json_text(const ModelParams& p);

}  // namespace ncqm
