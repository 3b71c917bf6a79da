#include "ncqm/cli.hpp"

#include "ncqm/algebra.hpp"
#include "ncqm/errors.hpp"
#include "ncqm/fractional.hpp"
#include "ncqm/oracle.hpp"
#include "ncqm/params.hpp"
#include "ncqm/quadrature.hpp"
#include "ncqm/ring.hpp"
#include "ncqm/spectra.hpp"
#include "ncqm/wavefunctions.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <future>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace ncqm::cli {

namespace {

using nlohmann::json;

std::string num(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

struct Range {
    int lo = 0;
    int hi = 0;
};

Range parse_range(const std::string& s, const char* what) {
    auto to_int = [&](const std::string& t) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(t, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != t.size()) {
            throw ValidationError(std::string("bad ") + what + " range '" + s + "'");
        }
        return v;
    };
    Range r;
    if (auto pos = s.find(".."); pos != std::string::npos) {
        r.lo = to_int(s.substr(0, pos));
        r.hi = to_int(s.substr(pos + 2));
    } else {
        r.lo = r.hi = to_int(s);
    }
    if (r.hi < r.lo) throw ValidationError(std::string(what) + " range is empty");
    if (r.lo < 0) throw ValidationError(std::string(what) + " must be non-negative");
    return r;
}

// Config file plus flag overrides; flags win.
struct ModelOptions {
    std::string config;
    std::optional<double> eta0, theta0, alpha, beta, e_ref, hbar, mass, charge, spring_k;
    std::optional<std::string> mechanism;
    std::string output;

    void attach(CLI::App* app) {
        app->add_option("--config", config, "JSON model config (default: $NCQM_CONFIG)");
        app->add_option("--eta0", eta0, "momentum noncommutativity at e_ref");
        app->add_option("--theta0", theta0, "coordinate noncommutativity at e_ref");
        app->add_option("--alpha", alpha, "eta power-law exponent");
        app->add_option("--beta", beta, "theta power-law exponent");
        app->add_option("--e-ref", e_ref, "reference energy E0");
        app->add_option("--mechanism", mechanism, "sqf | ec | eo_i | eo_ii");
        app->add_option("--hbar", hbar);
        app->add_option("--mass", mass);
        app->add_option("--charge", charge);
        app->add_option("--spring-k", spring_k, "oscillator spring constant (0 = free)");
        app->add_option("-o,--output", output, "output file (default stdout)");
    }

    ModelParams load() const {
        std::string path = config;
        if (path.empty()) {
            if (const char* env = std::getenv("NCQM_CONFIG")) path = env;
        }
        ModelParams p;
        if (!path.empty()) {
            std::ifstream in(path);
            if (!in) throw ValidationError("cannot read config '" + path + "'");
            std::stringstream ss;
            ss << in.rdbuf();
            p = params_from_json_text(ss.str());
        }
        if (eta0) p.eta0 = *eta0;
        if (theta0) p.theta0 = *theta0;
        if (alpha) p.alpha_exp = *alpha;
        if (beta) p.beta_exp = *beta;
        if (e_ref) p.e_ref = *e_ref;
        if (mechanism) p.mechanism = mechanism_from_string(*mechanism);
        if (hbar) p.constants.hbar = *hbar;
        if (mass) p.constants.mass = *mass;
        if (charge) p.constants.charge = *charge;
        if (spring_k) p.constants.spring_k = *spring_k;
        p.validate();
        return p;
    }
};

void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ValidationError("cannot write output '" + path + "'");
    f << text;
    if (!f) throw Error("failed writing '" + path + "'");
}

// Evaluates rows concurrently; results come back in index order.
std::vector<std::string> fan_out(std::size_t count,
                                 const std::function<std::string(std::size_t)>& row) {
    const std::size_t workers =
        std::max<std::size_t>(1, std::min<std::size_t>(count, std::thread::hardware_concurrency()));
    std::vector<std::string> out(count);
    std::vector<std::future<void>> jobs;
    for (std::size_t w = 0; w < workers; ++w) {
        jobs.push_back(std::async(std::launch::async, [&, w] {
            for (std::size_t i = w; i < count; i += workers) out[i] = row(i);
        }));
    }
    for (auto& j : jobs) j.get();
    return out;
}

// ---------------------------------------------------------------- spectrum

struct SpectrumOptions {
    ModelOptions model;
    std::string n = "0", mphi = "0", nalpha = "0", nbeta = "0";
    std::optional<double> eps;
    double tol = 1e-10;
};

std::string run_spectrum(const SpectrumOptions& o) {
    const ModelParams p = o.model.load();
    const auto& c = p.constants;
    std::ostringstream csv;
    csv << "mechanism,n,m_phi,n_alpha,n_beta,energy,method,residual\n";
    const std::string mech(to_string(p.mechanism));

    if (p.mechanism == Mechanism::sqf) {
        const Range ra = parse_range(o.nalpha, "n_alpha");
        const Range rb = parse_range(o.nbeta, "n_beta");
        const double eps = o.eps.value_or(p.e_ref);
        if (!(eps > 0.0)) throw ValidationError("--eps must be positive");
        const int wa = ra.hi - ra.lo + 1;
        const auto rows = fan_out(static_cast<std::size_t>(wa) * (rb.hi - rb.lo + 1),
                                  [&](std::size_t i) {
            spectra::QuantumNumbers qn;
            qn.n_alpha = ra.lo + static_cast<int>(i % wa);
            qn.n_beta = rb.lo + static_cast<int>(i / wa);
            const double e = c.spring_k > 0.0 ? spectra::sqf_oscillator_spectrum(p, eps, qn)
                                              : spectra::sqf_free_spectrum(p, eps, qn);
            return mech + "," + std::to_string(std::min(qn.n_alpha, qn.n_beta)) + "," +
                   std::to_string(qn.n_alpha - qn.n_beta) + "," + std::to_string(qn.n_alpha) +
                   "," + std::to_string(qn.n_beta) + "," + num(e) + ",closed_form,0\n";
        });
        for (const auto& r : rows) csv << r;
        return csv.str();
    }

    const Range rn = parse_range(o.n, "n");
    const Range rm = parse_range(o.mphi, "m_phi");
    const int wm = rm.hi - rm.lo + 1;
    const std::size_t count = static_cast<std::size_t>(rn.hi - rn.lo + 1) * wm;
    auto qn_at = [&](std::size_t i) {
        spectra::QuantumNumbers qn;
        qn.n = rn.lo + static_cast<int>(i / wm);
        qn.m_phi = rm.lo + static_cast<int>(i % wm);
        qn.n_alpha = qn.n + qn.m_phi;
        qn.n_beta = qn.n;
        return qn;
    };
    auto prefix = [&](const spectra::QuantumNumbers& qn) {
        return mech + "," + std::to_string(qn.n) + "," + std::to_string(qn.m_phi) + "," +
               std::to_string(qn.n_alpha) + "," + std::to_string(qn.n_beta) + ",";
    };

    if (p.mechanism == Mechanism::eo_i || p.mechanism == Mechanism::eo_ii) {
        if (p.eta0 != 0.0 || p.theta0 != 0.0 || !(c.spring_k > 0.0)) {
            throw UsageError("EO spectra are only tabulated in the commutative oscillator limit; "
                             "use verify or the library constraint for eta0, theta0 > 0");
        }
        const double omega = std::sqrt(c.spring_k / c.mass);
        const auto rows = fan_out(count, [&](std::size_t i) {
            const auto qn = qn_at(i);
            return prefix(qn) + num(spectra::commutative_spectrum(qn, omega, c)) +
                   ",closed_form,0\n";
        });
        for (const auto& r : rows) csv << r;
        return csv.str();
    }

    if (!(c.spring_k > 0.0) && !(p.eta0 > 0.0)) {
        throw UsageError("no confinement: set spring_k > 0 or eta0 > 0");
    }
    if (!(c.spring_k > 0.0) && p.alpha_exp == 1.0) {
        throw UsageError("free particle with alpha = 1 has no discrete levels (constraint only)");
    }
    spectra::ScanControl ctl;
    ctl.tol = o.tol;
    const auto rows = fan_out(count, [&](std::size_t i) {
        const auto qn = qn_at(i);
        try {
            const auto r = spectra::ec_solve_energy(qn, p, ctl);
            return prefix(qn) + num(r.energy) + "," + std::string(spectra::to_string(r.method)) +
                   "," + num(std::abs(r.residual)) + "\n";
        } catch (const BracketingError&) {
            return prefix(qn) + "nan,no_level,nan\n";
        }
    });
    for (const auto& r : rows) csv << r;
    return csv.str();
}

// ------------------------------------------------------------ wavefunction

struct WaveOptions {
    ModelOptions model;
    int n = 0;
    int mphi = 0;
    std::optional<double> energy;
    std::optional<double> r_max;
    int points = 201;
};

std::string run_wavefunction(const WaveOptions& o) {
    const ModelParams p = o.model.load();
    if (o.points < 2) throw ValidationError("--points must be at least 2");
    spectra::QuantumNumbers qn;
    qn.n = o.n;
    qn.m_phi = o.mphi;
    qn.n_alpha = o.n + o.mphi;
    qn.n_beta = o.n;
    qn.validate();
    double e = 0.0;
    if (o.energy) {
        e = *o.energy;
    } else if (p.mechanism == Mechanism::ec) {
        e = spectra::ec_solve_energy(qn, p).energy;
    } else {
        throw UsageError("--energy is required unless the mechanism is ec");
    }
    const auto sol = wave::radial_solution(e, qn, p);
    double r_max = 0.0;
    if (o.r_max) {
        r_max = *o.r_max;
        if (!(r_max > 0.0)) throw ValidationError("--r-max must be positive");
    } else {
        // Envelope decay radius; lambda r^2 / 2 = xi^2 / 2.
        const double xi2 = 2.0 * (2.0 * qn.n + qn.m_phi + 1.0) + 4.0 * std::log(1e8);
        r_max = std::sqrt(xi2) / sol.xi(1.0);
    }
    std::ostringstream csv;
    csv << "r,xi,R_value,density\n";
    for (int i = 0; i < o.points; ++i) {
        const double r = r_max * i / (o.points - 1);
        const double v = sol(r);
        csv << num(r) << "," << num(sol.xi(r)) << "," << num(v) << "," << num(v * v * r) << "\n";
    }
    return csv.str();
}

// ------------------------------------------------------------- commutators

struct CommutatorOptions {
    ModelOptions model;
    std::optional<double> theta, eta;
    int n_trunc = 30;
    std::string map = "sw";
};

std::string run_commutators(const CommutatorOptions& o) {
    const ModelParams p = o.model.load();
    const auto s = nc_strengths(p, p.e_ref);
    const double theta = o.theta.value_or(s.theta);
    const double eta = o.eta.value_or(s.eta);
    const auto rep = algebra::build_heisenberg_rep(o.n_trunc, p.constants, 1.0);
    algebra::MappedRep mapped;
    if (o.map == "sw") {
        mapped = algebra::sw_forward(rep, theta, eta);
    } else if (o.map == "asym_1") {
        mapped = algebra::alternative_maps(rep, theta, eta, algebra::AltMap::asym_1);
    } else if (o.map == "asym_2") {
        mapped = algebra::alternative_maps(rep, theta, eta, algebra::AltMap::asym_2);
    } else {
        throw ValidationError("--map must be sw, asym_1 or asym_2");
    }
    const auto entries =
        algebra::commutator_residuals(mapped, {theta, eta, mapped.hbar_eff, 0.0});
    json j;
    j["map"] = o.map;
    j["n_trunc"] = o.n_trunc;
    j["theta"] = theta;
    j["eta"] = eta;
    j["hbar_eff"] = mapped.hbar_eff;
    json arr = json::array();
    double worst = 0.0;
    for (const auto& e : entries) {
        arr.push_back({{"commutator", e.commutator},
                       {"target", {{"re", e.target.real()}, {"im", e.target.imag()}}},
                       {"max_residual", e.max_residual}});
        worst = std::max(worst, e.max_residual);
    }
    j["residuals"] = arr;
    j["max_residual"] = worst;
    if (o.map == "sw") {
        const auto back = algebra::sw_inverse(mapped, theta, eta, true);
        double rt = 0.0;
        auto diff = [&](const algebra::SpMat& a, const algebra::SpMat& b) {
            const algebra::SpMat d = a - b;
            for (int k = 0; k < d.outerSize(); ++k) {
                for (algebra::SpMat::InnerIterator it(d, k); it; ++it) {
                    rt = std::max(rt, std::abs(it.value()));
                }
            }
        };
        diff(back.x, rep.x);
        diff(back.y, rep.y);
        diff(back.px, rep.px);
        diff(back.py, rep.py);
        j["round_trip_residual"] = rt;
    }
    return j.dump(2) + "\n";
}

// -------------------------------------------------------------- fractional

struct FractionalOptions {
    ModelOptions model;
    double order = 0.5;
    double x_min = 0.1;
    double x_max = 2.0;
    int points = 20;
    std::optional<double> plane_wave_energy;
};

std::string run_fractional(const FractionalOptions& o) {
    const ModelParams p = o.model.load();
    if (o.plane_wave_energy) {
        const auto ev = fractional::plane_wave_eigenvalue(o.order, *o.plane_wave_energy, p.constants);
        json j{{"order", o.order},
               {"energy", *o.plane_wave_energy},
               {"re", ev.value.real()},
               {"im", ev.value.imag()},
               {"modulus", std::abs(ev.value)}};
        return j.dump(2) + "\n";
    }
    if (!(o.order > 0.0) || o.order > 1.0) throw ValidationError("--order must lie in (0, 1]");
    if (!(o.x_min > 0.0) || o.x_max < o.x_min) throw ValidationError("need 0 < x-min <= x-max");
    if (o.points < 1) throw ValidationError("--points must be positive");
    const auto lin = [](double x) { return x; };
    const auto rows = fan_out(static_cast<std::size_t>(o.points), [&](std::size_t i) {
        const double x = o.points == 1 ? o.x_min
                                       : o.x_min + (o.x_max - o.x_min) * static_cast<double>(i) /
                                                       (o.points - 1);
        const double h = x / 4000.0;
        // GL is first order in h; one Richardson step.
        const double gl = 2.0 * fractional::grunwald_letnikov(lin, o.order, x, 0.5 * h) -
                          fractional::grunwald_letnikov(lin, o.order, x, h);
        return num(x) + "," + num(fractional::caputo_exp(o.order, x)) + "," +
               num(fractional::riemann_liouville(lin, o.order, x)) + "," + num(gl) + "," +
               num(fractional::liouville_exp(o.order, 1.0, x)) + "\n";
    });
    std::string out = "x,caputo_exp,riemann_liouville_x,grunwald_letnikov_x,liouville_exp\n";
    for (const auto& r : rows) out += r;
    return out;
}

// -------------------------------------------------------------------- ring

struct RingOptions {
    ModelOptions model;
    double radius = 1.0;
    double alpha_ring = 1.0;
    double m_star_ring = 1.0;
    std::optional<double> eta;
    std::optional<double> energy;
    double phi_min = 0.0;
    double phi_max = 2.0;
    int steps = 41;
    int l_min = -2;
    int l_max = 2;
};

std::string run_ring(const RingOptions& o) {
    const ModelParams p = o.model.load();
    if (o.steps < 1) throw ValidationError("--steps must be positive");
    if (o.l_max < o.l_min) throw ValidationError("empty l range");
    double eta = p.eta0;
    if (o.eta) eta = *o.eta;
    else if (o.energy) eta = nc_strengths(p, *o.energy).eta;
    ring::RingSpec base;
    base.radius = o.radius;
    base.alpha_param = o.alpha_ring;
    base.m_star = o.m_star_ring;
    base.constants = p.constants;
    base.validate();
    const double phi0 = ring::flux_quantum(base);
    const int nl = o.l_max - o.l_min + 1;
    const auto rows = fan_out(static_cast<std::size_t>(o.steps) * nl, [&](std::size_t i) {
        const int s = static_cast<int>(i / nl);
        const int l = o.l_min + static_cast<int>(i % nl);
        const double f = o.steps == 1 ? o.phi_min
                                      : o.phi_min + (o.phi_max - o.phi_min) * s / (o.steps - 1);
        ring::RingSpec spec = base;
        spec.flux_ext = f * phi0;
        return num(f) + "," + std::to_string(l) + "," + num(ring::ring_levels(spec, eta, l)) +
               "," + num(ring::persistent_current(spec, eta, l)) + "\n";
    });
    std::string out = "phi_over_phi0,l,energy,current\n";
    for (const auto& r : rows) out += r;
    return out;
}

// ------------------------------------------------------------------ verify

struct Check {
    std::string name;
    std::string status;  // pass | fail | expected_divergence | skipped
    std::string detail;
};

double rel_diff(double a, double b) {
    return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

std::string fmt(const char* label, double v) { return std::string(label) + "=" + num(v); }

class Verifier {
public:
    explicit Verifier(const ModelParams& p) : p_(p) {}

    json run() {
        guarded("sw_commutators", [&] { return sw_commutators(); });
        guarded("sw_round_trip", [&] { return sw_round_trip(); });
        guarded("commutative_recovery", [&] { return commutative_recovery(); });
        guarded("ec_free_closed_form", [&] { return ec_free_closed_form(); });
        guarded("ec_vs_radial_oracle", [&] { return ec_vs_radial_oracle(); });
        guarded("ec_vs_fock_oracle", [&] { return ec_vs_fock_oracle(); });
        guarded("bogoliubov_vs_matrix", [&] { return bogoliubov_vs_matrix(); });
        guarded("half_derivative", [&] { return half_derivative(); });
        guarded("caputo_exp_series", [&] { return caputo_exp_series(); });
        guarded("ring_current_fd", [&] { return ring_current_fd(); });
        guarded("radial_normalization", [&] { return radial_normalization(); });

        json checks = json::array();
        json summary{{"pass", 0}, {"fail", 0}, {"expected_divergence", 0}, {"skipped", 0}};
        for (const auto& c : checks_) {
            checks.push_back({{"name", c.name}, {"status", c.status}, {"detail", c.detail}});
            summary[c.status] = summary[c.status].get<int>() + 1;
        }
        json params = json::parse(params_to_json_text(p_));
        return {{"params", params},
                {"checks", checks},
                {"oracle_reports", reports_},
                {"summary", summary}};
    }

    bool failed() const {
        return std::any_of(checks_.begin(), checks_.end(),
                           [](const Check& c) { return c.status == "fail"; });
    }

private:
    using Outcome = std::pair<std::string, std::string>;

    void guarded(const std::string& name, const std::function<Outcome()>& fn) {
        try {
            auto [status, detail] = fn();
            checks_.push_back({name, status, detail});
        } catch (const std::exception& e) {
            checks_.push_back({name, "fail", std::string("exception: ") + e.what()});
        }
    }

    static Outcome verdict(bool ok, const std::string& detail) {
        return {ok ? "pass" : "fail", detail};
    }

    Outcome sw_commutators() {
        const auto s = nc_strengths(p_, p_.e_ref);
        const auto rep = algebra::build_heisenberg_rep(20, p_.constants, 1.0);
        const auto mapped = algebra::sw_forward(rep, s.theta, s.eta);
        double worst = 0.0;
        for (const auto& e :
             algebra::commutator_residuals(mapped, {s.theta, s.eta, mapped.hbar_eff, 0.0})) {
            worst = std::max(worst, e.max_residual);
        }
        return verdict(worst <= 1e-10, fmt("max_interior_residual", worst) + " tol=1e-10");
    }

    Outcome sw_round_trip() {
        const auto s = nc_strengths(p_, p_.e_ref);
        const auto rep = algebra::build_heisenberg_rep(20, p_.constants, 1.0);
        const auto back =
            algebra::sw_inverse(algebra::sw_forward(rep, s.theta, s.eta), s.theta, s.eta, true);
        double worst = 0.0;
        const std::pair<const algebra::SpMat*, const algebra::SpMat*> pairs[] = {
            {&back.x, &rep.x}, {&back.y, &rep.y}, {&back.px, &rep.px}, {&back.py, &rep.py}};
        for (const auto& [a, b] : pairs) {
            const algebra::SpMat d = *a - *b;
            for (int k = 0; k < d.outerSize(); ++k) {
                for (algebra::SpMat::InnerIterator it(d, k); it; ++it) {
                    worst = std::max(worst, std::abs(it.value()));
                }
            }
        }
        return verdict(worst <= 1e-12, fmt("max_abs_error", worst) + " tol=1e-12");
    }

    Outcome commutative_recovery() {
        ModelParams q = p_;
        q.eta0 = 0.0;
        q.theta0 = 0.0;
        if (!(q.constants.spring_k > 0.0)) q.constants.spring_k = 1.0;
        const auto& c = q.constants;
        const double omega = std::sqrt(c.spring_k / c.mass);
        int bad = 0;
        for (int n = 0; n <= 2; ++n) {
            for (int m = 0; m <= 2; ++m) {
                spectra::QuantumNumbers qn{n, m, n + m, n};
                const double expect = spectra::commutative_spectrum(qn, omega, c);
                q.mechanism = Mechanism::ec;
                if (spectra::ec_solve_energy(qn, q).energy != expect) ++bad;
                q.mechanism = Mechanism::sqf;
                if (spectra::sqf_oscillator_spectrum(q, q.e_ref, qn) != expect) ++bad;
            }
        }
        return verdict(bad == 0, "levels (n, m) in [0,2]^2 for ec and sqf; mismatches=" +
                                     std::to_string(bad));
    }

    bool free_ec() const {
        return p_.mechanism == Mechanism::ec && p_.constants.spring_k == 0.0 && p_.eta0 > 0.0 &&
               p_.alpha_exp != 1.0;
    }

    bool oscillator_ec() const {
        return p_.mechanism == Mechanism::ec && p_.constants.spring_k > 0.0 &&
               (p_.eta0 > 0.0 || p_.theta0 > 0.0);
    }

    Outcome ec_free_closed_form() {
        if (!free_ec()) return {"skipped", "needs mechanism ec, spring_k = 0, eta0 > 0, alpha != 1"};
        double worst = 0.0;
        int levels = 0;
        for (int n = 0; n <= 2; ++n) {
            for (int m = 0; m <= 2; ++m) {
                spectra::QuantumNumbers qn{n, m, n + m, n};
                if (2.0 * n + (1.0 - std::numbers::sqrt2) * m + 1.0 <= 0.0) continue;
                const double closed = spectra::ec_free_energy_closed(qn, p_);
                const double root = spectra::ec_solve_energy(qn, p_).energy;
                worst = std::max(worst, rel_diff(root, closed));
                ++levels;
            }
        }
        return verdict(worst <= 1e-9, fmt("max_rel_diff", worst) + " tol=1e-9 levels=" +
                                          std::to_string(levels));
    }

    Outcome ec_vs_radial_oracle() {
        if (!free_ec() && !oscillator_ec()) {
            return {"skipped", "needs mechanism ec with a confining noncommutative term"};
        }
        double worst = 0.0;
        const spectra::QuantumNumbers levels[] = {{0, 0, 0, 0}, {0, 1, 1, 0}, {1, 0, 1, 1}};
        int idx = 0;
        for (const auto& qn : levels) {
            const double root = spectra::ec_solve_energy(qn, p_).energy;
            const auto sc = oracle::self_consistent_wrap(oracle::OracleKind::radial_fd, p_, qn);
            const double d = rel_diff(sc.energy, root);
            worst = std::max(worst, d);
            json rep{{"params", {{"n", qn.n}, {"m_phi", qn.m_phi}}},
                     {"level_index", idx++},
                     {"oracle_a", "root_find"},
                     {"oracle_b", "radial_fd_self_consistent"},
                     {"energy_a", root},
                     {"energy_b", sc.energy},
                     {"max_rel_diff", d}};
            if (free_ec()) rep["closed_form"] = spectra::ec_free_energy_closed(qn, p_);
            else rep["closed_form"] = nullptr;
            reports_.push_back(rep);
        }
        return verdict(worst <= 1e-6, fmt("max_rel_diff", worst) + " tol=1e-6");
    }

    Outcome ec_vs_fock_oracle() {
        if (!oscillator_ec()) return {"skipped", "needs mechanism ec with spring_k > 0"};
        const spectra::QuantumNumbers qn{0, 0, 0, 0};
        const auto ec = effective_coefficients(p_, spectra::ec_solve_energy(qn, p_).energy);
        if (!(std::abs(ec.b_h) < ec.omega_h)) {
            return {"skipped", "B_h >= omega_h: the Fock spectrum is unbounded below"};
        }
        const double root = spectra::ec_solve_energy(qn, p_).energy;
        const auto sc = oracle::self_consistent_wrap(oracle::OracleKind::fock, p_, qn);
        const double d = rel_diff(sc.energy, root);
        reports_.push_back({{"params", {{"n", 0}, {"m_phi", 0}}},
                            {"level_index", 0},
                            {"oracle_a", "root_find"},
                            {"oracle_b", "fock_self_consistent"},
                            {"energy_a", root},
                            {"energy_b", sc.energy},
                            {"closed_form", nullptr},
                            {"max_rel_diff", d}});
        return verdict(d <= 1e-6, fmt("rel_diff", d) + " tol=1e-6");
    }

    // The single-frequency Bogoliubov formula hbar (omega + B)(n_a + n_b + 1)
    // against the two-frequency spectrum of the same Hamiltonian.
    Outcome bogoliubov_vs_matrix() {
        double m_star = 1.0, b = 0.1, k = 1.0;
        std::string source = "demonstration coefficients m*=1 K=1 B=0.1";
        if (p_.constants.spring_k > 0.0 && (p_.eta0 > 0.0 || p_.theta0 > 0.0)) {
            const auto ec = effective_coefficients(p_, p_.e_ref);
            if (ec.b_h > 0.0 && ec.b_h < ec.omega_h) {
                m_star = ec.m_star;
                b = ec.b_h;
                k = ec.k_h;
                source = "config coefficients at e_ref";
            }
        }
        PhysicalConstants c = p_.constants;
        const double omega = std::sqrt(k / m_star);
        const auto fock = oracle::fock_matrix_eigensolve(20, m_star, b, k, c, 3);
        const double hb = c.hbar;
        const double single1 = hb * algebra::bogoliubov_frequency(omega, b) * 2.0;
        const double two_freq = hb * (omega - b) + hb * omega;  // first excited: E0 + hbar(omega - B)
        std::ostringstream d;
        d << source << "; single-frequency first excited " << num(single1)
          << ", matrix oracle " << num(fock.energies[1]) << " (two-frequency prediction "
          << num(two_freq) << "); ground " << num(fock.energies[0]);
        return {"expected_divergence", d.str()};
    }

    Outcome half_derivative() {
        const double x = 1.0;
        const double rl = fractional::riemann_liouville([](double t) { return t; }, 0.5, x);
        const double exact = 2.0 * std::sqrt(x / std::numbers::pi);
        const double err = std::abs(rl - exact);
        return verdict(err <= 1e-8, fmt("abs_error", err) + " tol=1e-8");
    }

    Outcome caputo_exp_series() {
        fractional::PowerSeriesFn f;
        f.alpha_grid = 1.0;
        double fact = 1.0;
        for (int k = 0; k < 60; ++k) {
            if (k > 0) fact *= k;
            f.coeffs.push_back(1.0 / fact);
        }
        double worst = 0.0;
        for (double x : {0.5, 2.0, 5.0, 10.0}) {
            for (double a : {0.25, 0.5, 0.75}) {
                const double series = caputo_series_derivative_order(f, a, x);
                worst = std::max(worst, rel_diff(fractional::caputo_exp(a, x), series));
            }
        }
        return verdict(worst <= 1e-10, fmt("max_rel_diff", worst) + " tol=1e-10 x<=10");
    }

    // Term-by-term Caputo derivative: sum_{k>=1} c_k Gamma(k+1)/Gamma(k+1-a) x^{k-a}.
    static double caputo_series_derivative_order(const fractional::PowerSeriesFn& f, double a,
                                                 double x) {
        double s = 0.0;
        for (std::size_t k = 1; k < f.coeffs.size(); ++k) {
            const double kk = static_cast<double>(k);
            s += f.coeffs[k] *
                 std::exp(std::lgamma(kk + 1.0) - std::lgamma(kk + 1.0 - a) + (kk - a) * std::log(x));
        }
        return s;
    }

    Outcome ring_current_fd() {
        ring::RingSpec spec;
        spec.constants = p_.constants;
        const double eta = p_.eta0;
        const double phi0 = ring::flux_quantum(spec);
        spec.flux_ext = 0.3 * phi0;
        const double h = 1e-4 * phi0;
        double worst = 0.0;
        for (int l = -1; l <= 1; ++l) {
            ring::RingSpec a = spec, b = spec;
            a.flux_ext += h;
            b.flux_ext -= h;
            const double fd = -(ring::ring_levels(a, eta, l) - ring::ring_levels(b, eta, l)) / (2 * h);
            const double exact = ring::persistent_current(spec, eta, l);
            worst = std::max(worst, std::abs(fd - exact) / std::max(1.0, std::abs(exact)));
        }
        return verdict(worst <= 1e-6, fmt("max_rel_diff", worst) + " tol=1e-6");
    }

    Outcome radial_normalization() {
        ModelParams q = p_;
        q.mechanism = Mechanism::ec;
        std::string source = "config";
        if (!(q.constants.spring_k > 0.0)) {
            q.eta0 = 0.0;
            q.theta0 = 0.0;
            q.constants.spring_k = 1.0;
            source = "commutative oscillator (spring_k=1)";
        }
        double worst = 0.0;
        for (int n = 0; n <= 2; ++n) {
            for (int m = 0; m <= 2; ++m) {
                spectra::QuantumNumbers qn{n, m, n + m, n};
                const double e = spectra::ec_solve_energy(qn, q).energy;
                const auto sol = wave::radial_solution(e, qn, q);
                if (sol.regime != wave::Regime::laguerre) {
                    return {"fail", "level not in the Laguerre regime"};
                }
                const double r_max = std::sqrt(2.0 * (2.0 * n + m + 1.0) + 80.0) / sol.xi(1.0);
                const auto res = quad::gauss_kronrod(
                    [&](double r) {
                        const double v = sol(r);
                        return v * v * r;
                    },
                    0.0, r_max, 1e-14, 1e-12);
                worst = std::max(worst, std::abs(res.value - 1.0));
            }
        }
        return verdict(worst <= 1e-8,
                       source + "; " + fmt("max_norm_error", worst) + " tol=1e-8");
    }

    ModelParams p_;
    std::vector<Check> checks_;
    json reports_ = json::array();
};

struct VerifyOptions {
    ModelOptions model;
};

int run_verify(const VerifyOptions& o, std::ostream& out) {
    const ModelParams p = o.model.load();
    Verifier v(p);
    const json report = v.run();
    emit(report.dump(2) + "\n", o.model.output, out);
    return v.failed() ? kExitBreach : kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Energy-dependent noncommutative quantum mechanics toolkit", "ncqm"};
    app.require_subcommand(1);

    SpectrumOptions so;
    auto* spectrum = app.add_subcommand("spectrum", "energy levels as CSV");
    so.model.attach(spectrum);
    spectrum->add_option("--n", so.n, "radial quantum number range a..b");
    spectrum->add_option("--mphi", so.mphi, "angular quantum number range a..b");
    spectrum->add_option("--nalpha", so.nalpha, "SQF n_alpha range");
    spectrum->add_option("--nbeta", so.nbeta, "SQF n_beta range");
    spectrum->add_option("--eps", so.eps, "SQF vacuum energy scale (default e_ref)");
    spectrum->add_option("--tol", so.tol, "bound on the quantization residual");

    WaveOptions wo;
    auto* wavefunction = app.add_subcommand("wavefunction", "radial samples as CSV");
    wo.model.attach(wavefunction);
    wavefunction->add_option("--n", wo.n);
    wavefunction->add_option("--mphi", wo.mphi);
    wavefunction->add_option("--energy", wo.energy, "energy (default: solved level)");
    wavefunction->add_option("--r-max", wo.r_max);
    wavefunction->add_option("--points", wo.points);

    CommutatorOptions co;
    auto* commutators = app.add_subcommand("commutators", "commutator residuals as JSON");
    co.model.attach(commutators);
    commutators->add_option("--theta", co.theta);
    commutators->add_option("--eta", co.eta);
    commutators->add_option("--n-trunc", co.n_trunc);
    commutators->add_option("--map", co.map, "sw | asym_1 | asym_2");

    FractionalOptions fo;
    auto* fractional_cmd = app.add_subcommand("fractional", "fractional operators as CSV");
    fo.model.attach(fractional_cmd);
    fractional_cmd->add_option("--order", fo.order);
    fractional_cmd->add_option("--x-min", fo.x_min);
    fractional_cmd->add_option("--x-max", fo.x_max);
    fractional_cmd->add_option("--points", fo.points);
    fractional_cmd->add_option("--plane-wave-energy", fo.plane_wave_energy,
                               "print the plane-wave eigenvalue as JSON instead");

    RingOptions ro;
    auto* ring_cmd = app.add_subcommand("ring", "flux sweep of the ring levels as CSV");
    ro.model.attach(ring_cmd);
    ring_cmd->add_option("--radius", ro.radius);
    ring_cmd->add_option("--alpha-ring", ro.alpha_ring);
    ring_cmd->add_option("--m-star-ring", ro.m_star_ring);
    ring_cmd->add_option("--eta", ro.eta, "eta (default eta0, or the power law at --energy)");
    ring_cmd->add_option("--energy", ro.energy);
    ring_cmd->add_option("--phi-min", ro.phi_min, "in units of h/e");
    ring_cmd->add_option("--phi-max", ro.phi_max, "in units of h/e");
    ring_cmd->add_option("--steps", ro.steps);
    ring_cmd->add_option("--l-min", ro.l_min);
    ring_cmd->add_option("--l-max", ro.l_max);

    VerifyOptions vo;
    auto* verify = app.add_subcommand("verify", "oracle cross-checks as a JSON report");
    vo.model.attach(verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    try {
        if (*spectrum) emit(run_spectrum(so), so.model.output, out);
        else if (*wavefunction) emit(run_wavefunction(wo), wo.model.output, out);
        else if (*commutators) emit(run_commutators(co), co.model.output, out);
        else if (*fractional_cmd) emit(run_fractional(fo), fo.model.output, out);
        else if (*ring_cmd) emit(run_ring(ro), ro.model.output, out);
        else if (*verify) return run_verify(vo, out);
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "computation failed: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitOk;
}

}  // namespace ncqm::cli
