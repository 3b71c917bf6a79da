#include "ncqm/wavefunctions.hpp"

#include "ncqm/errors.hpp"
#include "ncqm/specfun.hpp"

#include <cmath>

namespace ncqm::wave {

double RadialSolution::xi(double r) const { return std::sqrt(lambda_scale) * r; }

double RadialSolution::operator()(double r) const {
    const double s = xi(r);
    if (regime == Regime::laguerre) return c_norm * radial_laguerre(n, m_phi, s);
    return c_norm * radial_bessel(m_phi, c_big, s);
}

double radial_bessel(int m_phi, double c_big, double xi) {
    if (!(c_big > 0.0)) throw DomainError("radial_bessel needs C > 0");
    if (!(xi >= 0.0)) throw DomainError("radial_bessel needs xi >= 0");
    return specfun::bessel_j(m_phi, std::sqrt(c_big) * xi);
}

double radial_laguerre(int n, int m_phi, double xi) {
    if (m_phi < 0) throw DomainError("m_phi must be non-negative");
    if (!(xi >= 0.0)) throw DomainError("radial_laguerre needs xi >= 0");
    const double x2 = xi * xi;
    const double pw = (m_phi == 0) ? 1.0 : std::pow(xi, m_phi);
    return std::exp(-0.5 * x2) * pw * specfun::laguerre(n, m_phi, x2);
}

bool in_bessel_window(double c_big, double xi, double threshold) {
    return xi * xi <= threshold * c_big;
}

double normalization_constant_literal(int n, int m_phi, double lambda_scale) {
    if (!(lambda_scale > 0.0)) throw DomainError("lambda must be positive");
    if (n < 0 || m_phi < 0) throw DomainError("quantum numbers must be non-negative");
    return 2.0 * lambda_scale *
           std::exp(specfun::log_factorial(n) - specfun::log_factorial(n + m_phi));
}

double normalization_constant(int n, int m_phi, double lambda_scale) {
    return std::sqrt(normalization_constant_literal(n, m_phi, lambda_scale));
}

double lambda_scale(double energy, const ModelParams& p) {
    const auto ec = effective_coefficients(p, energy);
    if (!(ec.k_h > 0.0)) throw DomainError("K_h(E) must be positive");
    return std::sqrt(ec.m_star * ec.k_h) / p.constants.hbar;
}

double c_big(double energy, int m_phi, const ModelParams& p) {
    const auto ec = effective_coefficients(p, energy);
    if (!(ec.k_h > 0.0)) throw DomainError("K_h(E) must be positive");
    const double hbar = p.constants.hbar;
    return 2.0 * std::sqrt(ec.m_star) * (energy + m_phi * hbar * ec.b_h) /
           (hbar * std::sqrt(ec.k_h));
}

RadialSolution radial_solution(double energy, const spectra::QuantumNumbers& qn,
                               const ModelParams& p, double rel_tol) {
    qn.validate();
    RadialSolution s;
    s.n = qn.n;
    s.m_phi = qn.m_phi;
    s.energy = energy;
    s.lambda_scale = lambda_scale(energy, p);
    s.c_big = c_big(energy, qn.m_phi, p);
    const double quantized = 2.0 * (2.0 * qn.n + qn.m_phi + 1.0);
    if (std::abs(s.c_big - quantized) <= rel_tol * quantized) {
        s.regime = Regime::laguerre;
        s.c_norm = normalization_constant(qn.n, qn.m_phi, s.lambda_scale);
    } else {
        if (!(s.c_big > 0.0)) throw DomainError("C(E) must be positive for the Bessel regime");
        s.regime = Regime::bessel;
        s.c_norm = 1.0;
    }
    return s;
}

double ground_state_free(double r, double energy, const ModelParams& p) {
    if (p.constants.spring_k != 0.0) throw UsageError("ground_state_free needs spring_k = 0");
    const auto& c = p.constants;
    const double k0 = p.eta0 * p.eta0 / (4.0 * c.mass * c.hbar * c.hbar);
    const double rate = std::sqrt(c.mass * k0 / (8.0 * c.hbar * c.hbar)) *
                        energy_ratio_power(energy, p.e_ref, p.alpha_exp);
    return std::exp(-rate * r * r);
}

double omega_eff(double energy, const ModelParams& p) {
    const auto& c = p.constants;
    if (!(c.spring_k > 0.0)) throw UsageError("omega_eff needs spring_k > 0");
    const double w = std::sqrt(c.spring_k / c.mass);
    const double num = 1.0 + p.eta0 * p.eta0 / (8.0 * c.mass * c.mass * w * w * c.hbar * c.hbar) *
                                 energy_ratio_power(energy, p.e_ref, 2.0 * p.alpha_exp);
    const double den = 1.0 + c.mass * c.mass * w * w * p.theta0 / (4.0 * c.hbar * c.hbar) *
                                 energy_ratio_power(energy, p.e_ref, p.beta_exp);
    return w * std::sqrt(num / den);
}

double ground_state_oscillator(double r, double energy, const ModelParams& p) {
    const auto& c = p.constants;
    return std::exp(-c.mass * omega_eff(energy, p) * r * r / (2.0 * c.hbar));
}

double nonlocality_bound(double energy, const ModelParams& p) {
    return 0.5 * nc_strengths(p, energy).theta;
}

// ------------------------------------------------------------ grid fields

void GridField::validate() const {
    if (nx < 3 || ny < 3) throw ValidationError("grid needs at least 3 points per axis");
    if (!(dx > 0.0) || !(dy > 0.0)) throw ValidationError("grid spacing must be positive");
    if (values.size() != static_cast<std::size_t>(nx) * ny) {
        throw ValidationError("grid sample count does not match nx * ny");
    }
    for (const auto& v : values) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw ValidationError("grid samples must be finite");
        }
    }
}

bool GridField::same_grid(const GridField& o) const {
    return nx == o.nx && ny == o.ny && x0 == o.x0 && y0 == o.y0 && dx == o.dx && dy == o.dy;
}

double modified_norm(const GridField& psi, const std::vector<double>& dv_de) {
    psi.validate();
    if (dv_de.size() != psi.values.size()) {
        throw ValidationError("dV/dE samples do not match the grid");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < dv_de.size(); ++i) {
        if (dv_de[i] > 1.0) {
            throw NormalizabilityError("dV/dE exceeds 1: the modified norm is not positive");
        }
        sum += std::norm(psi.values[i]) * (1.0 - dv_de[i]);
    }
    return sum * psi.dx * psi.dy;
}

std::vector<double> orthogonality_kernel(const std::vector<double>& v_e1,
                                         const std::vector<double>& v_e2, double e1, double e2) {
    if (e1 == e2) {
        throw UsageError("equal energies: use dV/dE through modified_norm instead");
    }
    if (v_e1.size() != v_e2.size()) throw ValidationError("potential grids differ in size");
    std::vector<double> out(v_e1.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = (v_e2[i] - v_e1[i]) / (e2 - e1);
    return out;
}

namespace {

// d/ds of samples f(i * h), i = 0..n-1, at index i.
template <class Get>
cplx diff1(Get f, int i, int n, double h) {
    if (i == 0) return (-3.0 * f(0) + 4.0 * f(1) - f(2)) / (2.0 * h);
    if (i == n - 1) return (3.0 * f(n - 1) - 4.0 * f(n - 2) + f(n - 3)) / (2.0 * h);
    return (f(i + 1) - f(i - 1)) / (2.0 * h);
}

}  // namespace

VectorField gradient(const GridField& f) {
    f.validate();
    VectorField g;
    g.jx.resize(f.values.size());
    g.jy.resize(f.values.size());
    for (int iy = 0; iy < f.ny; ++iy) {
        for (int ix = 0; ix < f.nx; ++ix) {
            const std::size_t k = static_cast<std::size_t>(iy) * f.nx + ix;
            g.jx[k] = diff1([&](int i) { return f.at(i, iy); }, ix, f.nx, f.dx);
            g.jy[k] = diff1([&](int i) { return f.at(ix, i); }, iy, f.ny, f.dy);
        }
    }
    return g;
}

std::vector<cplx> divergence(const VectorField& j, const GridField& grid) {
    GridField gx = grid;
    GridField gy = grid;
    gx.values = j.jx;
    gy.values = j.jy;
    const auto dx = gradient(gx);
    const auto dy = gradient(gy);
    std::vector<cplx> out(j.jx.size());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = dx.jx[k] + dy.jy[k];
    return out;
}

VectorField probability_current(const GridField& psi, const GridField& phi,
                                const PhysicalConstants& c, CurrentConvention conv) {
    psi.validate();
    phi.validate();
    if (!psi.same_grid(phi)) throw ValidationError("probability_current: grids differ");

    GridField psi_conj = psi;
    for (auto& v : psi_conj.values) v = std::conj(v);
    const auto grad_phi = gradient(phi);
    const auto grad_psi_conj = gradient(psi_conj);

    const cplx i(0.0, 1.0);
    const cplx pre = (conv == CurrentConvention::hbar_squared)
                         ? -(c.hbar * c.hbar) / (2.0 * i * c.mass)
                         : c.hbar / (2.0 * i * c.mass);
    VectorField j;
    j.jx.resize(psi.values.size());
    j.jy.resize(psi.values.size());
    for (std::size_t k = 0; k < psi.values.size(); ++k) {
        j.jx[k] = pre * (psi_conj.values[k] * grad_phi.jx[k] - phi.values[k] * grad_psi_conj.jx[k]);
        j.jy[k] = pre * (psi_conj.values[k] * grad_phi.jy[k] - phi.values[k] * grad_psi_conj.jy[k]);
    }
    return j;
}

}  // namespace ncqm::wave
