#include "ncqm/spectra.hpp"

#include "ncqm/algebra.hpp"
#include "ncqm/errors.hpp"
#include "ncqm/specfun.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace ncqm::spectra {

namespace {

double radial_degeneracy(const QuantumNumbers& qn) { return 2.0 * qn.n + qn.m_phi + 1.0; }

void require(bool ok, const char* what) {
    if (!ok) throw UsageError(what);
}

}  // namespace

void QuantumNumbers::validate() const {
    if (n < 0 || m_phi < 0 || n_alpha < 0 || n_beta < 0) {
        throw ValidationError("quantum numbers must be non-negative");
    }
}

std::string_view to_string(Method m) {
    switch (m) {
        case Method::closed_form: return "closed_form";
        case Method::root_find: return "root_find";
        case Method::first_order: return "first_order";
    }
    return "unknown";
}

void FractionalOscSpec::validate() const {
    if (!(alpha_p > 0.0) || !(beta_p > 0.0)) {
        throw ValidationError("fractional oscillator exponents must be positive");
    }
    if (!(d_alpha > 0.0)) throw ValidationError("D_alpha must be positive");
    if (!(q > 0.0)) throw ValidationError("coupling q must be positive");
}

double sqf_free_spectrum(const ModelParams& p, double eps, const QuantumNumbers& qn) {
    require(p.mechanism == Mechanism::sqf, "sqf_free_spectrum needs mechanism sqf");
    require(p.constants.spring_k == 0.0, "sqf_free_spectrum needs spring_k = 0");
    qn.validate();
    const auto ec = effective_coefficients(p, eps);
    const double omega = algebra::bogoliubov_frequency(ec.omega_eps, ec.b_e);
    return p.constants.hbar * omega * (qn.n_alpha + qn.n_beta + 1.0);
}

double sqf_oscillator_spectrum(const ModelParams& p, double eps, const QuantumNumbers& qn) {
    require(p.mechanism == Mechanism::sqf, "sqf_oscillator_spectrum needs mechanism sqf");
    require(p.constants.spring_k > 0.0, "sqf_oscillator_spectrum needs spring_k > 0");
    qn.validate();
    const auto ec = effective_coefficients(p, eps);
    const double omega = algebra::bogoliubov_frequency(ec.omega_h, ec.b_h);
    return p.constants.hbar * omega * (qn.n_alpha + qn.n_beta + 1.0);
}

double ec_quantization_residual(double energy, const QuantumNumbers& qn, const ModelParams& p) {
    qn.validate();
    const auto ec = effective_coefficients(p, energy);
    if (!(ec.k_h > 0.0)) throw DomainError("K_h(E) must be positive");
    const double hbar = p.constants.hbar;
    return hbar / std::sqrt(ec.m_star) * radial_degeneracy(qn) -
           (energy + qn.m_phi * hbar * ec.b_h) / std::sqrt(ec.k_h);
}

namespace {

SpectrumResult bisect(const QuantumNumbers& qn, const ModelParams& p, double lo, double flo,
                      double hi, const ScanControl& ctl) {
    for (int it = 0; it < 2000; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = ec_quantization_residual(mid, qn, p);
        if (fm == 0.0) {
            lo = hi = mid;
            break;
        }
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    const double rlo = ec_quantization_residual(lo, qn, p);
    const double rhi = ec_quantization_residual(hi, qn, p);
    SpectrumResult out;
    out.method = Method::root_find;
    if (std::abs(rlo) <= std::abs(rhi)) {
        out.energy = lo;
        out.residual = rlo;
    } else {
        out.energy = hi;
        out.residual = rhi;
    }
    if (!(std::abs(out.residual) <= ctl.tol)) {
        throw ConvergenceError("bisection ended with residual above tolerance");
    }
    return out;
}

std::vector<double> scan_grid(double lo, double hi, double per_decade) {
    std::vector<double> g;
    double start = lo;
    if (lo <= 0.0) {
        g.push_back(lo);
        start = hi * 1e-12;
    }
    const double decades = std::log10(hi / start);
    const int steps = std::max(1, int(std::ceil(decades * per_decade)));
    for (int i = 0; i <= steps; ++i) {
        g.push_back(i == steps ? hi : start * std::pow(10.0, decades * i / steps));
    }
    return g;
}

}  // namespace

SpectrumResult ec_solve_energy(const QuantumNumbers& qn, const ModelParams& p, double lo,
                               double hi, const ScanControl& ctl) {
    qn.validate();
    p.validate();
    if (!(hi > lo) || hi <= 0.0) throw ValidationError("bracket must satisfy lo < hi, hi > 0");
    if (!(ctl.points_per_decade >= 1.0)) throw ValidationError("points_per_decade must be >= 1");

    const auto grid = scan_grid(lo, hi, ctl.points_per_decade);
    std::vector<double> res(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        res[i] = ec_quantization_residual(grid[i], qn, p);
    }

    int changes = 0;
    std::ptrdiff_t first = -1;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const bool change = (res[i] == 0.0) || (res[i] < 0.0) != (res[i + 1] < 0.0);
        if (change && !(res[i + 1] == 0.0 && i + 2 < grid.size())) {
            ++changes;
            if (first < 0) first = static_cast<std::ptrdiff_t>(i);
        }
    }
    if (first < 0) {
        throw BracketingError("quantization residual does not change sign on the bracket");
    }

    SpectrumResult out;
    if (res[first] == 0.0) {
        out.energy = grid[first];
        out.residual = 0.0;
        out.method = Method::root_find;
    } else {
        out = bisect(qn, p, grid[first], res[first], grid[first + 1], ctl);
    }
    out.bracket_lo = lo;
    out.bracket_hi = hi;
    out.roots_found = changes;
    return out;
}

SpectrumResult ec_solve_energy(const QuantumNumbers& qn, const ModelParams& p,
                               const ScanControl& ctl) {
    qn.validate();
    p.validate();
    const auto& c = p.constants;
    if (p.eta0 == 0.0 && p.theta0 == 0.0 && c.spring_k > 0.0) {
        // Coefficients do not depend on E: the level is explicit.
        SpectrumResult out;
        out.energy = commutative_spectrum(qn, std::sqrt(c.spring_k / c.mass), c);
        out.residual = ec_quantization_residual(out.energy, qn, p);
        out.bracket_lo = out.bracket_hi = out.energy;
        return out;
    }
    double scale = p.e_ref;
    if (c.spring_k > 0.0) {
        scale = std::max(scale, c.hbar * std::sqrt(c.spring_k / c.mass) * radial_degeneracy(qn));
    }
    return ec_solve_energy(qn, p, scale * 1e-10, scale * 1e10, ctl);
}

namespace {

void require_ec_free(const ModelParams& p) {
    require(p.mechanism == Mechanism::ec, "EC free-particle formulas need mechanism ec");
    require(p.constants.spring_k == 0.0, "EC free-particle formulas need spring_k = 0");
    if (!(p.eta0 > 0.0)) throw DomainError("EC free-particle formulas need eta0 > 0");
}

double free_denominator(const QuantumNumbers& qn) {
    return 2.0 * qn.n + (1.0 - std::numbers::sqrt2) * qn.m_phi + 1.0;
}

}  // namespace

double ec_free_energy_closed(const QuantumNumbers& qn, const ModelParams& p) {
    qn.validate();
    require_ec_free(p);
    if (p.alpha_exp == 1.0) {
        throw UsageError("alpha = 1 has no discrete free-particle spectrum; use the constraint");
    }
    const auto& c = p.constants;
    const double d = free_denominator(qn);
    if (!(d > 0.0)) throw DomainError("no bound level: 2n + (1 - sqrt 2) m + 1 <= 0");
    const double k0 = p.eta0 * p.eta0 / (4.0 * c.mass * c.hbar * c.hbar);
    const double g = std::sqrt(2.0 * c.mass / (c.hbar * c.hbar * k0));
    const double inv = 1.0 / (p.alpha_exp - 1.0);
    return std::pow(g * p.e_ref, inv) * p.e_ref / std::pow(d, inv);
}

bool ec_free_alpha1_constraint(const QuantumNumbers& qn, const ModelParams& p, double rel_tol) {
    qn.validate();
    require_ec_free(p);
    const auto& c = p.constants;
    const double k0 = p.eta0 * p.eta0 / (4.0 * c.mass * c.hbar * c.hbar);
    const double target = c.hbar * std::sqrt(k0 / (2.0 * c.mass)) * free_denominator(qn);
    return std::abs(p.e_ref - target) <= rel_tol * std::abs(p.e_ref);
}

namespace {

double first_order_denominator(const QuantumNumbers& qn, const ModelParams& p, double e_com) {
    require(p.mechanism == Mechanism::ec, "first-order formula needs mechanism ec");
    require(p.alpha_exp == 1.0 && p.beta_exp == 1.0, "first-order formula needs alpha = beta = 1");
    const auto& c = p.constants;
    require(c.spring_k > 0.0, "first-order formula needs spring_k > 0");
    const double w2 = c.spring_k / c.mass;
    const double den = p.e_ref + 0.5 * qn.m_phi * w2 * (p.eta0 / c.spring_k + c.mass * p.theta0) -
                       c.mass * c.mass * w2 * p.theta0 / (8.0 * c.hbar * c.hbar) * e_com;
    if (!(std::abs(den) > 1e-300) || !std::isfinite(den)) {
        throw DegenerateParameterError("first-order denominator vanishes");
    }
    return den;
}

}  // namespace

double ec_oscillator_first_order(const QuantumNumbers& qn, const ModelParams& p) {
    qn.validate();
    const auto& c = p.constants;
    const double e_com = commutative_spectrum(qn, std::sqrt(c.spring_k / c.mass), c);
    return e_com / first_order_denominator(qn, p, e_com);
}

double ec_oscillator_first_order_energy(const QuantumNumbers& qn, const ModelParams& p) {
    qn.validate();
    const auto& c = p.constants;
    const double e_com = commutative_spectrum(qn, std::sqrt(c.spring_k / c.mass), c);
    return e_com / (first_order_denominator(qn, p, e_com) / p.e_ref);
}

double commutative_spectrum(const QuantumNumbers& qn, double omega, const PhysicalConstants& c) {
    qn.validate();
    if (!(omega >= 0.0)) throw DomainError("omega must be non-negative");
    return c.hbar * omega * radial_degeneracy(qn);
}

double fixed_coefficient_level(const QuantumNumbers& qn, double m_star, double b_field,
                               double k_elastic, const PhysicalConstants& c) {
    qn.validate();
    if (!(m_star > 0.0) || !(k_elastic > 0.0)) {
        throw DomainError("fixed_coefficient_level needs m* > 0 and K > 0");
    }
    return c.hbar * std::sqrt(k_elastic / m_star) * radial_degeneracy(qn) -
           qn.m_phi * c.hbar * b_field;
}

double fractional_oscillator_exponent(const FractionalOscSpec& spec) {
    spec.validate();
    return spec.alpha_p * spec.beta_p / (spec.alpha_p + spec.beta_p);
}

double fractional_oscillator_prefactor(const FractionalOscSpec& spec, const PhysicalConstants& c) {
    spec.validate();
    const double a = spec.alpha_p;
    const double b = spec.beta_p;
    const double inner = std::numbers::pi * c.hbar * b * std::pow(spec.d_alpha, 1.0 / a) *
                         std::pow(spec.q, 2.0 / b) /
                         (2.0 * specfun::beta_fn(1.0 / b, 1.0 / a + 1.0));
    return std::pow(inner, fractional_oscillator_exponent(spec));
}

double fractional_oscillator_levels(const FractionalOscSpec& spec, int n,
                                    const PhysicalConstants& c) {
    if (n < 0) throw ValidationError("level index must be non-negative");
    return fractional_oscillator_prefactor(spec, c) *
           std::pow(n + 0.5, fractional_oscillator_exponent(spec));
}

EoRadialParams eo_alpha1_radial_params(double energy, const QuantumNumbers& qn, double b_i,
                                       double k_i, const PhysicalConstants& c) {
    qn.validate();
    if (!(k_i > 0.0)) throw DomainError("K_I must be positive");
    if (!(energy > 0.0)) throw DomainError("energy must be positive");
    EoRadialParams out;
    out.xi_scale = std::pow(c.mass * k_i * energy * energy, 0.25) / c.hbar;
    out.sigma = 2.0 * std::sqrt(c.mass) * (1.0 + qn.m_phi * b_i) / std::sqrt(k_i);
    return out;
}

bool eo_alpha1_constraint(const QuantumNumbers& qn, double b_i, double k_i,
                          const PhysicalConstants& c, double rel_tol) {
    const double sigma = eo_alpha1_radial_params(1.0, qn, b_i, k_i, c).sigma;
    const double target = 2.0 * radial_degeneracy(qn);
    return std::abs(sigma - target) <= rel_tol * target;
}

EoIdentification eo_from_ec_alpha1(const ModelParams& p) {
    const auto& c = p.constants;
    const double b0 = p.eta0 / (2.0 * c.mass * c.hbar);
    const double ke0 = p.eta0 * p.eta0 / (8.0 * c.mass * c.hbar * c.hbar);
    return {c.hbar * b0 / p.e_ref, c.hbar * c.hbar * ke0 / (p.e_ref * p.e_ref)};
}

}  // namespace ncqm::spectra
