#pragma once

// Mesoscopic ring threaded by an external flux phi plus the effective flux
// phi_nc generated by momentum noncommutativity.
//
// The ring mass m_star here is the ring convention (m over a power of the
// ring alpha) and is unrelated to the oscillator m* of params.hpp.

#include "ncqm/params.hpp"

#include <vector>

namespace ncqm::ring {

struct RingSpec {
    double radius = 1.0;
    double flux_ext = 0.0;
    double alpha_param = 1.0;  // theta eta = 2 hbar^2 alpha^2 (1 - alpha^2)
    double m_star = 1.0;
    PhysicalConstants constants{};

    void validate() const;
};

/// h / e = 2 pi hbar / e.
double flux_quantum(const RingSpec& spec);

/// B_z = eta / (e alpha^2 hbar).
double nc_field(const RingSpec& spec, double eta);

/// phi_nc = 2 pi R^2 eta / (e hbar alpha^2).
double nc_flux(const RingSpec& spec, double eta);

/// (hbar^2 / 2m* R^2)[l + (phi - phi_nc)/phi0]^2 - (3 hbar^2 / 8 m* R^2)(phi_nc/phi0)^2
double ring_levels(const RingSpec& spec, double eta, int l);

/// -dE_l/dphi = -(hbar^2 / m* R^2 phi0)[l + (phi - phi_nc)/phi0]
double persistent_current(const RingSpec& spec, double eta, int l);

/// Angular index of the lowest level at the spec's flux (ties go to the smaller l).
int ground_index(const RingSpec& spec, double eta);
double ground_energy(const RingSpec& spec, double eta);
double ground_current(const RingSpec& spec, double eta);

/// The same with eta taken from the power law at the given energy.
double ring_levels_at_energy(const RingSpec& spec, const ModelParams& p, double energy, int l);
double persistent_current_at_energy(const RingSpec& spec, const ModelParams& p, double energy,
                                    int l);

/// Both alpha > 0 solving theta eta = 2 hbar^2 alpha^2 (1 - alpha^2), larger first.
std::vector<double> alpha_roots(double theta, double eta, const PhysicalConstants& c);

}  // namespace ncqm::ring
