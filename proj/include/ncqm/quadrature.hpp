#pragma once

#include <functional>

namespace ncqm::quad {

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    int evaluations = 0;
};

/// Adaptive Gauss-Kronrod (7/15) on [a, b]. Throws ConvergenceError when the
/// requested tolerance is not met within `max_depth` bisections.
QuadResult gauss_kronrod(const std::function<double(double)>& f, double a, double b,
                         double abs_tol = 1e-13, double rel_tol = 1e-12, int max_depth = 40);

}  // namespace ncqm::quad
