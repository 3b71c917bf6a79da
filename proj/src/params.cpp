#include "ncqm/params.hpp"

#include "ncqm/errors.hpp"

#include "json.hpp"

#include <cmath>
#include <string>

namespace ncqm {

namespace {

// |1 - theta eta / 4 hbar^2| below this is treated as the k(E) pole.
constexpr double kPoleTolerance = 1e-12;

void require_finite(double v, const char* name) {
    if (!std::isfinite(v)) {
        throw ValidationError(std::string(name) + " must be finite");
    }
}

}  // namespace

std::string_view to_string(Mechanism m) {
    switch (m) {
        case Mechanism::sqf: return "sqf";
        case Mechanism::ec: return "ec";
        case Mechanism::eo_i: return "eo_i";
        case Mechanism::eo_ii: return "eo_ii";
    }
    return "unknown";
}

Mechanism mechanism_from_string(std::string_view s) {
    if (s == "sqf") return Mechanism::sqf;
    if (s == "ec") return Mechanism::ec;
    if (s == "eo_i") return Mechanism::eo_i;
    if (s == "eo_ii") return Mechanism::eo_ii;
    throw ValidationError("unknown mechanism '" + std::string(s) +
                          "' (expected sqf, ec, eo_i or eo_ii)");
}

void PhysicalConstants::validate() const {
    require_finite(hbar, "hbar");
    require_finite(mass, "mass");
    require_finite(charge, "charge");
    require_finite(spring_k, "spring_k");
    if (hbar <= 0.0) throw ValidationError("hbar must be positive");
    if (mass <= 0.0) throw ValidationError("mass must be positive");
    if (spring_k < 0.0) throw ValidationError("spring_k must be non-negative");
}

void ModelParams::validate() const {
    constants.validate();
    require_finite(eta0, "eta0");
    require_finite(theta0, "theta0");
    require_finite(alpha_exp, "alpha");
    require_finite(beta_exp, "beta");
    require_finite(e_ref, "e_ref");
    if (e_ref <= 0.0) throw ValidationError("e_ref must be positive");
    if (eta0 < 0.0) throw ValidationError("eta0 must be non-negative");
    if (theta0 < 0.0) throw ValidationError("theta0 must be non-negative");
}

double energy_ratio_power(double energy, double e_ref, double exponent) {
    if (!(energy >= 0.0)) throw DomainError("energy must be non-negative");
    if (energy == 0.0) {
        if (exponent < 0.0) {
            throw SingularityError("negative exponent at zero energy");
        }
        return exponent == 0.0 ? 1.0 : 0.0;
    }
    return std::pow(energy / e_ref, exponent);
}

Strengths nc_strengths(const ModelParams& p, double energy) {
    return {p.theta0 * energy_ratio_power(energy, p.e_ref, p.beta_exp),
            p.eta0 * energy_ratio_power(energy, p.e_ref, p.alpha_exp)};
}

double effective_planck(double theta, double eta, const PhysicalConstants& c) {
    return c.hbar * (1.0 + theta * eta / (4.0 * c.hbar * c.hbar));
}

namespace {

void require_antisymmetric(const Eigen::Matrix4d& m, const char* name) {
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((m + m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
        throw ValidationError(std::string(name) + " must be antisymmetric");
    }
}

}  // namespace

double effective_planck_4d(const Eigen::Matrix4d& theta, const Eigen::Matrix4d& eta,
                           const PhysicalConstants& c) {
    require_antisymmetric(theta, "theta matrix");
    require_antisymmetric(eta, "eta matrix");
    return c.hbar * (1.0 + (theta * eta).trace() / (4.0 * c.hbar * c.hbar));
}

Eigen::Matrix4d xp_commutator_coefficients_4d(const Eigen::Matrix4d& theta,
                                              const Eigen::Matrix4d& eta,
                                              const PhysicalConstants& c) {
    require_antisymmetric(theta, "theta matrix");
    require_antisymmetric(eta, "eta matrix");
    return Eigen::Matrix4d::Identity() + theta * eta.transpose() / (4.0 * c.hbar * c.hbar);
}

double k_factor(double theta, double eta, const PhysicalConstants& c, bool exact) {
    const double denom = 1.0 - theta * eta / (4.0 * c.hbar * c.hbar);
    if (std::abs(denom) <= kPoleTolerance) {
        throw SingularityError("k(E) pole: theta*eta = 4 hbar^2");
    }
    return exact ? 1.0 / denom : 1.0;
}

RescaledStrengths rescaled_strengths(double theta, double eta, const PhysicalConstants& c) {
    const double s = 1.0 + theta * eta / (4.0 * c.hbar * c.hbar);
    if (!(s > 0.0)) {
        throw DomainError("rescaling requires 1 + theta*eta/4hbar^2 > 0");
    }
    return {theta / s, eta / s, 1.0 / std::sqrt(s)};
}

EffectiveCoefficients effective_coefficients(const ModelParams& p, double energy) {
    const auto& c = p.constants;
    const auto [theta, eta] = nc_strengths(p, energy);
    const double hbar = c.hbar;
    const double m = c.mass;
    const double k = c.spring_k;

    EffectiveCoefficients out;
    out.theta = theta;
    out.eta = eta;
    out.b_e = eta / (2.0 * m * hbar);
    out.k_e = eta * eta / (8.0 * m * hbar * hbar);
    const double mass_shift = k * theta * theta / (4.0 * hbar * hbar);
    out.m_star = (mass_shift == 0.0) ? m : 1.0 / (1.0 / m + mass_shift);
    out.b_h = out.b_e + k * theta / (2.0 * hbar);
    out.k_h = k + out.k_e;
    out.hbar_eff = effective_planck(theta, eta, c);
    const auto r = rescaled_strengths(theta, eta, c);
    out.theta_eff = r.theta_eff;
    out.eta_eff = r.eta_eff;
    out.xi_scale = r.xi_scale;
    try {
        out.k_of_e = k_factor(theta, eta, c, true);
    } catch (const SingularityError&) {
        out.k_of_e.reset();
    }
    out.omega = std::sqrt(k / m);
    out.omega_h = std::sqrt(out.k_h / out.m_star);
    out.omega_eps = std::sqrt(out.k_e / m);
    return out;
}

namespace {

nlohmann::json params_to_json(const ModelParams& p) {
    return nlohmann::json{{"eta0", p.eta0},
                       {"theta0", p.theta0},
                       {"alpha", p.alpha_exp},
                       {"beta", p.beta_exp},
                       {"e_ref", p.e_ref},
                       {"mechanism", std::string(to_string(p.mechanism))},
                       {"hbar", p.constants.hbar},
                       {"mass", p.constants.mass},
                       {"charge", p.constants.charge},
                       {"spring_k", p.constants.spring_k}};
}

void read_number(const nlohmann::json& j, const char* key, double& out) {
    auto it = j.find(key);
    if (it == j.end()) return;
    if (!it->is_number()) {
        throw ValidationError(std::string("field '") + key + "' must be a number");
    }
    out = it->get<double>();
}

void params_from_json(const nlohmann::json& j, ModelParams& p) {
    if (!j.is_object()) throw ValidationError("model parameters must be a JSON object");
    static constexpr const char* kKnown[] = {"eta0", "theta0", "alpha", "beta", "e_ref",
                                             "mechanism", "hbar", "mass", "charge",
                                             "spring_k"};
    for (const auto& [key, value] : j.items()) {
        bool known = false;
        for (const char* k : kKnown) known = known || key == k;
        if (!known) throw ValidationError("unknown config field '" + key + "'");
    }
    read_number(j, "eta0", p.eta0);
    read_number(j, "theta0", p.theta0);
    read_number(j, "alpha", p.alpha_exp);
    read_number(j, "beta", p.beta_exp);
    read_number(j, "e_ref", p.e_ref);
    read_number(j, "hbar", p.constants.hbar);
    read_number(j, "mass", p.constants.mass);
    read_number(j, "charge", p.constants.charge);
    read_number(j, "spring_k", p.constants.spring_k);
    if (auto it = j.find("mechanism"); it != j.end()) {
        if (!it->is_string()) throw ValidationError("field 'mechanism' must be a string");
        p.mechanism = mechanism_from_string(it->get<std::string>());
    }
    p.validate();
}

}  // namespace

ModelParams params_from_json_text(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("config is not valid JSON: ") + e.what());
    }
    ModelParams p;
    params_from_json(j, p);
    return p;
}

std::string params_to_json_text(const ModelParams& p) {
    return params_to_json(p).dump(2);
}

}  // namespace ncqm
