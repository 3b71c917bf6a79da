#include "ncqm/oracle.hpp"

#include "ncqm/algebra.hpp"
#include "ncqm/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace ncqm::oracle {

namespace {

constexpr double kDecayLog = 18.420680743952367;  // ln(1e8)

void check_coefficients(double m_star, double k_elastic) {
    if (!(m_star > 0.0)) throw DomainError("m* must be positive");
    if (!(k_elastic > 0.0)) throw DomainError("the oracles need a confining K > 0");
}

double lambda_of(double m_star, double k_elastic, const PhysicalConstants& c) {
    return std::sqrt(m_star * k_elastic) / c.hbar;
}

// Number of eigenvalues of the symmetric tridiagonal matrix below x
// (Sturm sequence through the LDL^T pivots).
int sturm_count(const Eigen::VectorXd& diag, const Eigen::VectorXd& sub, double x) {
    int count = 0;
    double d = diag[0] - x;
    for (Eigen::Index i = 0;; ++i) {
        if (d == 0.0) d = -1e-300;
        if (d < 0.0) ++count;
        if (i + 1 == diag.size()) break;
        d = diag[i + 1] - x - sub[i] * sub[i] / d;
    }
    return count;
}

// k-th smallest eigenvalue by bisection on the Sturm count.
double tridiagonal_eigenvalue(const Eigen::VectorXd& diag, const Eigen::VectorXd& sub, int k) {
    double lo = INFINITY;
    double hi = -INFINITY;
    for (Eigen::Index i = 0; i < diag.size(); ++i) {
        const double r = (i > 0 ? std::abs(sub[i - 1]) : 0.0) +
                         (i + 1 < diag.size() ? std::abs(sub[i]) : 0.0);
        lo = std::min(lo, diag[i] - r);
        hi = std::max(hi, diag[i] + r);
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (sturm_count(diag, sub, mid) > k) hi = mid;
        else lo = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double suggested_r_max(double m_star, double k_elastic, int m_phi, int count,
                       const PhysicalConstants& c) {
    check_coefficients(m_star, k_elastic);
    // xi^2 at the outer turning point of the highest level plus a decay margin.
    const double xi2 = 2.0 * (2.0 * count + m_phi + 1.0) + 4.0 * kDecayLog;
    return std::sqrt(xi2 / lambda_of(m_star, k_elastic, c));
}

std::vector<double> radial_fd_raw(double m_star, double b_field, double k_elastic, int m_phi,
                                  double r_max, int points, int count,
                                  const PhysicalConstants& c) {
    check_coefficients(m_star, k_elastic);
    if (points < 10) throw GridError("radial grid needs at least 10 points");
    if (count < 1 || count > points) throw ValidationError("invalid level count");
    if (0.5 * lambda_of(m_star, k_elastic, c) * r_max * r_max <= kDecayLog) {
        throw GridError("r_max too small: envelope has not decayed below 1e-8");
    }

    // Cell centres r_i = (i + 1/2) h with R = 0 at r_max; flux form of
    // (1/r)(r R')', symmetrized with sqrt(r_i).
    const int n = points;
    const double h = r_max / (n + 0.5);
    const double t = c.hbar * c.hbar / (2.0 * m_star * h * h);
    Eigen::VectorXd diag(n);
    Eigen::VectorXd sub(n - 1);
    for (int i = 0; i < n; ++i) {
        const double r = (i + 0.5) * h;
        const double r_lo = i * h;
        const double r_hi = (i + 1.0) * h;
        const double centrifugal = c.hbar * c.hbar * m_phi * m_phi / (2.0 * m_star * r * r);
        diag[i] = t * (r_lo + r_hi) / r + centrifugal + 0.5 * k_elastic * r * r;
        if (i + 1 < n) sub[i] = -t * r_hi / std::sqrt(r * (r + h));
    }
    std::vector<double> out(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        out[i] = tridiagonal_eigenvalue(diag, sub, i) - m_phi * c.hbar * b_field;
    }
    return out;
}

std::vector<double> radial_fd_eigensolve(double m_star, double b_field, double k_elastic,
                                         int m_phi, const RadialGrid& grid, int count,
                                         const PhysicalConstants& c) {
    if (grid.points < 500) throw GridError("radial_fd_eigensolve needs at least 500 points");
    if (m_phi < 0) throw ValidationError("m_phi must be non-negative");
    const double r_max =
        grid.r_max > 0.0 ? grid.r_max : suggested_r_max(m_star, k_elastic, m_phi, count, c);
    const int fine = grid.points;
    const int coarse = grid.points / 2;
    const auto ef = radial_fd_raw(m_star, b_field, k_elastic, m_phi, r_max, fine, count, c);
    const auto ec = radial_fd_raw(m_star, b_field, k_elastic, m_phi, r_max, coarse, count, c);
    // h scales as 1 / (points + 1/2).
    const double ratio = (fine + 0.5) / (coarse + 0.5);
    const double r2 = ratio * ratio;
    std::vector<double> out(ef.size());
    for (std::size_t i = 0; i < ef.size(); ++i) out[i] = (r2 * ef[i] - ec[i]) / (r2 - 1.0);
    return out;
}

namespace {

Eigen::MatrixXcd dense_hamiltonian(int n_trunc, double m_star, double b_field, double k_elastic,
                                   const PhysicalConstants& c, double kappa,
                                   algebra::SpMat* lz_out) {
    check_coefficients(m_star, k_elastic);
    PhysicalConstants cm = c;
    cm.mass = m_star;
    const auto rep = algebra::build_heisenberg_rep(n_trunc, cm, std::sqrt(k_elastic / m_star));
    const algebra::SpMat lz = rep.x * rep.py - rep.y * rep.px;
    const algebra::SpMat kin = (rep.px * rep.px + rep.py * rep.py) * (0.5 / m_star);
    const algebra::SpMat pot = (rep.x * rep.x + rep.y * rep.y) * (0.5 * k_elastic);
    algebra::SpMat h = kin + pot - (b_field - kappa) * lz;
    if (lz_out) *lz_out = lz;
    Eigen::MatrixXcd d(h);
    return 0.5 * (d + d.adjoint());
}

std::vector<double> lowest(int n_trunc, double m_star, double b_field, double k_elastic,
                           const PhysicalConstants& c, int count) {
    const auto h = dense_hamiltonian(n_trunc, m_star, b_field, k_elastic, c, 0.0, nullptr);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw ConvergenceError("dense eigensolve failed");
    std::vector<double> out(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) out[i] = es.eigenvalues()[i];
    return out;
}

}  // namespace

FockSpectrum fock_matrix_eigensolve(int n_trunc, double m_star, double b_field,
                                    double k_elastic, const PhysicalConstants& c, int count) {
    if (n_trunc < 20) throw ValidationError("fock_matrix_eigensolve needs n_trunc >= 20");
    if (count < 1 || count > n_trunc) throw ValidationError("requested count outside the window");
    FockSpectrum out;
    out.energies = lowest(n_trunc, m_star, b_field, k_elastic, c, count);
    const auto wider = lowest(n_trunc + 5, m_star, b_field, k_elastic, c, count);
    for (int i = 0; i < count; ++i) {
        out.max_shift = std::max(out.max_shift, std::abs(wider[i] - out.energies[i]));
    }
    out.converged = out.max_shift <= 1e-8 * std::max(1.0, std::abs(out.energies.back()));
    return out;
}

std::vector<LabeledLevel> fock_labeled_levels(int n_trunc, double m_star, double b_field,
                                              double k_elastic, const PhysicalConstants& c) {
    if (n_trunc < 20) throw ValidationError("fock_labeled_levels needs n_trunc >= 20");
    const double omega = std::sqrt(k_elastic / m_star);
    // A small irrational L_z shift separates accidental degeneracies between
    // sectors so each eigenvector has sharp angular momentum.
    const double kappa = 1e-3 * std::sqrt(2.0) * omega;
    algebra::SpMat lz;
    const auto h = dense_hamiltonian(n_trunc, m_star, b_field, k_elastic, c, kappa, &lz);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    if (es.info() != Eigen::Success) throw ConvergenceError("dense eigensolve failed");
    const Eigen::MatrixXcd lz_v = lz * es.eigenvectors();

    // H conserves the total oscillator number N, and only shells with
    // N <= n_trunc - 2 are complete. Levels from higher shells lie above
    // hbar[(omega - |B|)(n_trunc - 1) + omega].
    const double bmax = std::abs(b_field) + kappa;
    if (bmax >= omega) throw DomainError("|B| >= omega: the spectrum is unbounded below");
    const double cutoff =
        c.hbar * ((omega - bmax) * (n_trunc - 1.0) + omega) * (1.0 - 1e-9);
    std::vector<LabeledLevel> out;
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
        const double l = es.eigenvectors().col(i).dot(lz_v.col(i)).real() / c.hbar;
        const int m = static_cast<int>(std::lround(l));
        if (std::abs(l - m) > 1e-6) continue;
        const double e = es.eigenvalues()[i] - kappa * m * c.hbar;
        if (e > cutoff) continue;
        out.push_back({e, m, 0});
    }
    std::sort(out.begin(), out.end(), [](const LabeledLevel& a, const LabeledLevel& b) {
        return a.m != b.m ? a.m < b.m : a.energy < b.energy;
    });
    std::map<int, int> seen;
    for (auto& lv : out) lv.n_r = seen[lv.m]++;
    std::sort(out.begin(), out.end(),
              [](const LabeledLevel& a, const LabeledLevel& b) { return a.energy < b.energy; });
    return out;
}

double oracle_level(OracleKind kind, const ModelParams& p, const spectra::QuantumNumbers& qn,
                    double energy, const SelfConsistentOptions& opt) {
    qn.validate();
    const auto ec = effective_coefficients(p, energy);
    if (kind == OracleKind::radial_fd) {
        RadialGrid g;
        g.points = opt.fd_points;
        return radial_fd_eigensolve(ec.m_star, ec.b_h, ec.k_h, qn.m_phi, g, qn.n + 1,
                                    p.constants)[qn.n];
    }
    const auto levels = fock_labeled_levels(opt.fock_trunc, ec.m_star, ec.b_h, ec.k_h, p.constants);
    for (const auto& lv : levels) {
        if (lv.m == qn.m_phi && lv.n_r == qn.n) return lv.energy;
    }
    throw ConvergenceError("requested level lies outside the converged Fock window");
}

namespace {

std::string trace_text(const std::vector<double>& trace) {
    std::ostringstream os;
    os.precision(12);
    const std::size_t start = trace.size() > 8 ? trace.size() - 8 : 0;
    for (std::size_t i = start; i < trace.size(); ++i) os << (i > start ? ", " : "") << trace[i];
    return os.str();
}

}  // namespace

SelfConsistentResult self_consistent_wrap(OracleKind kind, const ModelParams& p,
                                          const spectra::QuantumNumbers& qn,
                                          const SelfConsistentOptions& opt) {
    p.validate();
    qn.validate();
    const auto& c = p.constants;
    auto level = [&](double e) { return oracle_level(kind, p, qn, e, opt); };
    auto close = [&](double a, double b) { return std::abs(a - b) <= opt.tol * std::abs(b); };

    SelfConsistentResult out;
    double scale = p.e_ref;
    if (c.spring_k > 0.0) {
        scale = c.hbar * std::sqrt(c.spring_k / c.mass) * (2.0 * qn.n + qn.m_phi + 1.0);
    }

    // Damped fixed point; the first step is undamped so energy-independent
    // coefficients finish after one iteration.
    try {
        double e = level(scale);
        out.trace.push_back(e);
        for (int it = 1; it <= opt.max_iter; ++it) {
            const double l = level(e);
            out.iterations = it;
            if (close(l, e)) {
                out.energy = l;
                return out;
            }
            e += opt.damping * (l - e);
            out.trace.push_back(e);
            // Collapse towards E = 0 is the trivial solution, not a level.
            if (!(e > 1e-8 * scale) || !std::isfinite(e)) break;
        }
    } catch (const DomainError&) {
    } catch (const GridError&) {
    }

    // Bisection on g(E) = E - level(E) over a geometric scan.
    out.used_bisection = true;
    auto g = [&](double e) { return e - level(e); };
    double lo = 0.0;
    double glo = 0.0;
    double hi = 0.0;
    bool found = false;
    double prev_e = 0.0;
    double prev_g = 0.0;
    bool have_prev = false;
    for (int i = 0; i <= 240 && !found; ++i) {
        const double e = scale * std::pow(10.0, -6.0 + 0.05 * i);
        double ge = 0.0;
        try {
            ge = g(e);
        } catch (const Error&) {
            have_prev = false;
            continue;
        }
        if (have_prev && ((prev_g < 0.0) != (ge < 0.0))) {
            lo = prev_e;
            glo = prev_g;
            hi = e;
            found = true;
        }
        prev_e = e;
        prev_g = ge;
        have_prev = true;
    }
    if (!found) {
        throw ConvergenceError("self-consistent loop did not converge; last iterates: " +
                               trace_text(out.trace));
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double gm = g(mid);
        out.trace.push_back(mid);
        ++out.iterations;
        if ((gm < 0.0) == (glo < 0.0)) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
        if (close(lo, hi)) break;
    }
    out.energy = 0.5 * (lo + hi);
    return out;
}

}  // namespace ncqm::oracle
