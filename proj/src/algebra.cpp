#include "ncqm/algebra.hpp"

#include "ncqm/errors.hpp"

#include <cmath>

namespace ncqm::algebra {

namespace {

// Two-mode ladder operator; `first` selects the mode stored in the slow index.
SpMat ladder(int n, bool first) {
    std::vector<Eigen::Triplet<cplx>> t;
    t.reserve(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const int col = i * n + j;
            if (first && i > 0) t.emplace_back((i - 1) * n + j, col, std::sqrt(double(i)));
            if (!first && j > 0) t.emplace_back(i * n + j - 1, col, std::sqrt(double(j)));
        }
    }
    SpMat m(n * n, n * n);
    m.setFromTriplets(t.begin(), t.end());
    return m;
}

bool interior(int index, int n) {
    const int lim = n - 2;
    return index / n < lim && index % n < lim;
}

}  // namespace

FockRep build_heisenberg_rep(int n_trunc, const PhysicalConstants& c, double ref_frequency) {
    c.validate();
    if (n_trunc < 4) throw ValidationError("n_trunc must be at least 4");
    if (n_trunc > kMaxTrunc) throw ValidationError("n_trunc exceeds the per-mode cap of 120");
    if (!(ref_frequency > 0.0)) throw ValidationError("ref_frequency must be positive");

    FockRep rep;
    rep.n_trunc = n_trunc;
    rep.ref_frequency = ref_frequency;
    rep.constants = c;
    rep.interior_dim = n_trunc - 2;
    rep.a = ladder(n_trunc, true);
    rep.b = ladder(n_trunc, false);
    rep.a_dag = rep.a.adjoint();
    rep.b_dag = rep.b.adjoint();

    const double xs = std::sqrt(c.hbar / (2.0 * c.mass * ref_frequency));
    const cplx ps(0.0, std::sqrt(c.mass * ref_frequency * c.hbar / 2.0));
    rep.x = xs * (rep.a + rep.a_dag);
    rep.y = xs * (rep.b + rep.b_dag);
    rep.px = ps * (rep.a_dag - rep.a);
    rep.py = ps * (rep.b_dag - rep.b);
    return rep;
}

MappedRep sw_forward(const FockRep& rep, double theta, double eta) {
    const double h = rep.constants.hbar;
    const double t = theta / (2.0 * h);
    const double e = eta / (2.0 * h);
    MappedRep out;
    out.x = rep.x - t * rep.py;
    out.y = rep.y + t * rep.px;
    out.px = rep.px + e * rep.y;
    out.py = rep.py - e * rep.x;
    out.theta = theta;
    out.eta = eta;
    out.hbar = h;
    out.hbar_eff = effective_planck(theta, eta, rep.constants);
    out.n_trunc = rep.n_trunc;
    return out;
}

CanonicalMatrices sw_inverse(const MappedRep& mapped, double theta, double eta, bool exact_k) {
    PhysicalConstants c;
    c.hbar = mapped.hbar;
    const double k = k_factor(theta, eta, c, exact_k);
    const double t = theta / (2.0 * c.hbar);
    const double e = eta / (2.0 * c.hbar);
    CanonicalMatrices out;
    out.x = k * (mapped.x + t * mapped.py);
    out.y = k * (mapped.y - t * mapped.px);
    out.px = k * (mapped.px - e * mapped.y);
    out.py = k * (mapped.py + e * mapped.x);
    return out;
}

MappedRep alternative_maps(const FockRep& rep, double theta, double eta, AltMap variant) {
    const double h = rep.constants.hbar;
    MappedRep out;
    out.x = rep.x;
    out.y = rep.y;
    out.px = rep.px;
    out.py = rep.py;
    if (variant == AltMap::asym_1) {
        out.x = rep.x - (theta / h) * rep.py;
        out.py = rep.py - (eta / h) * rep.x;
    } else {
        out.y = rep.y + (theta / h) * rep.px;
        out.px = rep.px + (eta / h) * rep.y;
    }
    out.theta = theta;
    out.eta = eta;
    out.hbar = h;
    out.hbar_eff = h;
    out.n_trunc = rep.n_trunc;
    return out;
}

SpMat commutator(const SpMat& a, const SpMat& b) {
    SpMat ab = a * b;
    SpMat ba = b * a;
    return ab - ba;
}

double interior_residual(const SpMat& m, cplx s, int n_trunc) {
    const int dim = n_trunc * n_trunc;
    double worst = 0.0;
    std::vector<char> diag_seen(static_cast<std::size_t>(dim), 0);
    for (int col = 0; col < m.outerSize(); ++col) {
        if (!interior(col, n_trunc)) continue;
        for (SpMat::InnerIterator it(m, col); it; ++it) {
            const int row = static_cast<int>(it.row());
            if (!interior(row, n_trunc)) continue;
            cplx v = it.value();
            if (row == col) {
                v -= s;
                diag_seen[col] = 1;
            }
            worst = std::max(worst, std::abs(v));
        }
    }
    // Structurally missing diagonal entries are zeros that still differ from s.
    if (s != cplx(0.0)) {
        for (int i = 0; i < dim; ++i) {
            if (interior(i, n_trunc) && !diag_seen[i]) worst = std::max(worst, std::abs(s));
        }
    }
    return worst;
}

double interior_max_abs(const SpMat& m, int n_trunc) { return interior_residual(m, 0.0, n_trunc); }

std::vector<ResidualEntry> commutator_residuals(const MappedRep& mapped,
                                                const ResidualTargets& targets) {
    const int n = mapped.n_trunc;
    const cplx i(0.0, 1.0);
    struct Item {
        const char* name;
        const SpMat& a;
        const SpMat& b;
        cplx target;
    };
    const Item items[] = {
        {"[x,y]", mapped.x, mapped.y, i * targets.theta},
        {"[px,py]", mapped.px, mapped.py, i * targets.eta},
        {"[x,px]", mapped.x, mapped.px, i * targets.hbar_eff},
        {"[y,py]", mapped.y, mapped.py, i * targets.hbar_eff},
        {"[x,py]", mapped.x, mapped.py, cplx(targets.c_off)},
        {"[y,px]", mapped.y, mapped.px, cplx(-targets.c_off)},
    };
    std::vector<ResidualEntry> out;
    for (const auto& it : items) {
        out.push_back({it.name, it.target, interior_residual(commutator(it.a, it.b), it.target, n)});
    }
    return out;
}

double bogoliubov_frequency(double omega, double b_field) {
    if (!(omega >= 0.0)) throw DomainError("omega must be non-negative");
    return omega + b_field;
}

}  // namespace ncqm::algebra
