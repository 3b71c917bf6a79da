#include "ncqm/ring.hpp"

#include "ncqm/errors.hpp"

#include <cmath>
#include <numbers>

namespace ncqm::ring {

void RingSpec::validate() const {
    constants.validate();
    if (!(radius > 0.0)) throw ValidationError("ring radius must be positive");
    if (!(alpha_param > 0.0) || alpha_param > 1.0) {
        throw ValidationError("ring alpha must lie in (0, 1]");
    }
    if (!(m_star > 0.0)) throw ValidationError("ring mass must be positive");
    if (!std::isfinite(flux_ext)) throw ValidationError("external flux must be finite");
    if (constants.charge == 0.0) throw ValidationError("ring charge must be non-zero");
}

double flux_quantum(const RingSpec& spec) {
    spec.validate();
    return 2.0 * std::numbers::pi * spec.constants.hbar / spec.constants.charge;
}

double nc_field(const RingSpec& spec, double eta) {
    spec.validate();
    const double a2 = spec.alpha_param * spec.alpha_param;
    return eta / (spec.constants.charge * a2 * spec.constants.hbar);
}

double nc_flux(const RingSpec& spec, double eta) {
    spec.validate();
    const double a2 = spec.alpha_param * spec.alpha_param;
    return 2.0 * std::numbers::pi * spec.radius * spec.radius * eta /
           (spec.constants.charge * spec.constants.hbar * a2);
}

namespace {

double kinetic_scale(const RingSpec& spec) {
    const double h = spec.constants.hbar;
    return h * h / (spec.m_star * spec.radius * spec.radius);
}

double offset(const RingSpec& spec, double eta) {
    return (spec.flux_ext - nc_flux(spec, eta)) / flux_quantum(spec);
}

}  // namespace

double ring_levels(const RingSpec& spec, double eta, int l) {
    const double s = l + offset(spec, eta);
    const double f = nc_flux(spec, eta) / flux_quantum(spec);
    return 0.5 * kinetic_scale(spec) * s * s - 0.375 * kinetic_scale(spec) * f * f;
}

double persistent_current(const RingSpec& spec, double eta, int l) {
    return -kinetic_scale(spec) / flux_quantum(spec) * (l + offset(spec, eta));
}

int ground_index(const RingSpec& spec, double eta) {
    // (l + d)^2 is smallest at l = -d rounded; at exact half-integers take the smaller l.
    const double d = offset(spec, eta);
    const double lo = std::floor(-d);
    const double a = std::abs(lo + d);
    const double b = std::abs(lo + 1.0 + d);
    return static_cast<int>(b < a ? lo + 1.0 : lo);
}

double ground_energy(const RingSpec& spec, double eta) {
    return ring_levels(spec, eta, ground_index(spec, eta));
}

double ground_current(const RingSpec& spec, double eta) {
    return persistent_current(spec, eta, ground_index(spec, eta));
}

double ring_levels_at_energy(const RingSpec& spec, const ModelParams& p, double energy, int l) {
    return ring_levels(spec, nc_strengths(p, energy).eta, l);
}

double persistent_current_at_energy(const RingSpec& spec, const ModelParams& p, double energy,
                                    int l) {
    return persistent_current(spec, nc_strengths(p, energy).eta, l);
}

std::vector<double> alpha_roots(double theta, double eta, const PhysicalConstants& c) {
    c.validate();
    const double g = 2.0 * theta * eta / (c.hbar * c.hbar);
    if (g > 1.0) throw DomainError("theta eta exceeds hbar^2 / 2: no real ring alpha");
    if (g < 0.0) throw DomainError("theta eta must be non-negative");
    const double s = std::sqrt(1.0 - g);
    const double u_hi = 0.5 * (1.0 + s);
    const double u_lo = 0.5 * (1.0 - s);
    std::vector<double> out{std::sqrt(u_hi)};
    if (u_lo > 0.0 && u_lo != u_hi) out.push_back(std::sqrt(u_lo));
    return out;
}

}  // namespace ncqm::ring
