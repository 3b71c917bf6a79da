#include "ncqm/quadrature.hpp"

#include "ncqm/errors.hpp"

#include <array>
#include <cmath>

namespace ncqm::quad {

namespace {

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double kronrod;
    double error;
};

Panel gk15(const std::function<double(double)>& f, double a, double b, int& evals) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double k = kWgk[7] * fc;
    double g = kWg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = h * kXgk[i];
        const double s = f(c - dx) + f(c + dx);
        k += kWgk[i] * s;
        if (i % 2 == 1) g += kWg[i / 2] * s;
    }
    evals += 15;
    return {k * h, std::abs((k - g) * h)};
}

double adapt(const std::function<double(double)>& f, double a, double b, double tol,
             Panel whole, int depth, int max_depth, int& evals, double& err) {
    if (whole.error <= tol || depth >= max_depth) {
        err += whole.error;
        return whole.kronrod;
    }
    const double m = 0.5 * (a + b);
    const Panel left = gk15(f, a, m, evals);
    const Panel right = gk15(f, m, b, evals);
    return adapt(f, a, m, 0.5 * tol, left, depth + 1, max_depth, evals, err) +
           adapt(f, m, b, 0.5 * tol, right, depth + 1, max_depth, evals, err);
}

}  // namespace

QuadResult gauss_kronrod(const std::function<double(double)>& f, double a, double b,
                         double abs_tol, double rel_tol, int max_depth) {
    QuadResult out;
    if (a == b) return out;
    const Panel first = gk15(f, a, b, out.evaluations);
    const double tol = std::max(abs_tol, rel_tol * std::abs(first.kronrod));
    out.value = adapt(f, a, b, tol, first, 0, max_depth, out.evaluations, out.error);
    // Panels cut off at max_depth are fine as long as the summed estimate holds.
    if (!(out.error <= tol)) throw ConvergenceError("adaptive quadrature failed to converge");
    return out;
}

}  // namespace ncqm::quad
