#pragma once

// Independent eigensolvers for H = p^2/2m* - B L_z + K r^2/2:
//  * a finite-volume discretization of the radial equation at fixed m,
//  * exact diagonalization in a truncated two-mode Fock basis,
// and an outer loop that makes the coefficients self-consistent in E.

#include "ncqm/params.hpp"
#include "ncqm/spectra.hpp"

#include <vector>

namespace ncqm::oracle {

struct RadialGrid {
    double r_max = 0.0;  // <= 0 picks a radius from the decay length
    int points = 4000;
};

/// Lowest `count` levels with angular momentum m_phi (including -m hbar B),
/// Richardson-extrapolated from `points` and `points / 2` cells.
std::vector<double> radial_fd_eigensolve(double m_star, double b_field, double k_elastic,
                                         int m_phi, const RadialGrid& grid, int count,
                                         const PhysicalConstants& c = {});

/// Same without extrapolation, for convergence studies.
std::vector<double> radial_fd_raw(double m_star, double b_field, double k_elastic, int m_phi,
                                  double r_max, int points, int count,
                                  const PhysicalConstants& c = {});

/// Radius where the Gaussian envelope of the first `count` radial levels has
/// decayed below 1e-8.
double suggested_r_max(double m_star, double k_elastic, int m_phi, int count,
                       const PhysicalConstants& c = {});

struct FockSpectrum {
    std::vector<double> energies;
    double max_shift = 0.0;  // change of the returned levels under n_trunc + 5
    bool converged = true;   // max_shift <= 1e-8
};

FockSpectrum fock_matrix_eigensolve(int n_trunc, double m_star, double b_field,
                                    double k_elastic, const PhysicalConstants& c, int count);

struct LabeledLevel {
    double energy = 0.0;
    int m = 0;    // L_z / hbar
    int n_r = 0;  // radial index within the m sector
};

/// Levels labelled by angular momentum, from the joint eigenvectors of H and
/// L_z. Only levels well below the truncation edge are returned.
std::vector<LabeledLevel> fock_labeled_levels(int n_trunc, double m_star, double b_field,
                                              double k_elastic, const PhysicalConstants& c);

enum class OracleKind { radial_fd, fock };

struct SelfConsistentOptions {
    double tol = 1e-10;  // relative
    int max_iter = 200;
    double damping = 0.5;
    int fd_points = 2000;
    int fock_trunc = 20;
};

struct SelfConsistentResult {
    double energy = 0.0;
    int iterations = 0;
    bool used_bisection = false;
    std::vector<double> trace;
};

/// Level (n, m_phi) of the frozen-coefficient problem with coefficients at E.
double oracle_level(OracleKind kind, const ModelParams& p, const spectra::QuantumNumbers& qn,
                    double energy, const SelfConsistentOptions& opt = {});

/// E with oracle_level(E) = E: damped fixed point, bisection on E - level(E)
/// when the iteration does not settle.
SelfConsistentResult self_consistent_wrap(OracleKind kind, const ModelParams& p,
                                          const spectra::QuantumNumbers& qn,
                                          const SelfConsistentOptions& opt = {});

}  // namespace ncqm::oracle
