#pragma once

// Truncated two-mode Fock representation of the Heisenberg algebra and the
// linear maps that deform it into
//   [x^, y^] = i theta,  [p^x, p^y] = i eta,  [x^i, p^j] = i hbar_eff delta_ij.
//
// Basis index for |i>_a |j>_b is i * n_trunc + j. Truncation corrupts the top
// levels of each mode, so identities are only checked on the interior block
// where both occupations are below n_trunc - 2.

#include "ncqm/params.hpp"

#include <Eigen/SparseCore>

#include <complex>
#include <string>
#include <vector>

namespace ncqm::algebra {

using cplx = std::complex<double>;
using SpMat = Eigen::SparseMatrix<cplx>;

inline constexpr int kMaxTrunc = 120;

struct FockRep {
    int n_trunc = 0;
    double ref_frequency = 1.0;
    PhysicalConstants constants{};
    SpMat a, a_dag, b, b_dag;
    SpMat x, y, px, py;
    int interior_dim = 0;  // per mode
};

struct MappedRep {
    SpMat x, y, px, py;
    double theta = 0.0;
    double eta = 0.0;
    double hbar_eff = 1.0;
    double hbar = 1.0;
    int n_trunc = 0;
};

struct CanonicalMatrices {
    SpMat x, y, px, py;
};

enum class AltMap { asym_1, asym_2 };

FockRep build_heisenberg_rep(int n_trunc, const PhysicalConstants& c, double ref_frequency);

MappedRep sw_forward(const FockRep& rep, double theta, double eta);

/// Undo sw_forward. With exact_k = false the k(E) factor is replaced by 1.
CanonicalMatrices sw_inverse(const MappedRep& mapped, double theta, double eta,
                             bool exact_k = true);

/// asym_1 shifts only x and p_y, asym_2 only y and p_x. Both keep
/// [x^i, p^j] = i hbar delta_ij.
MappedRep alternative_maps(const FockRep& rep, double theta, double eta, AltMap variant);

struct ResidualTargets {
    double theta = 0.0;
    double eta = 0.0;
    double hbar_eff = 1.0;
    double c_off = 0.0;  // [x^, p^y] target; zero for every map implemented here
};

struct ResidualEntry {
    std::string commutator;
    cplx target;
    double max_residual = 0.0;
};

/// Max-abs entry of each commutator minus its target, on the interior block.
std::vector<ResidualEntry> commutator_residuals(const MappedRep& mapped,
                                                const ResidualTargets& targets);

SpMat commutator(const SpMat& a, const SpMat& b);

/// max |m_ij| over the interior block (rows and columns both interior).
double interior_max_abs(const SpMat& m, int n_trunc);

/// Same, for m - s * I.
double interior_residual(const SpMat& m, cplx s, int n_trunc);

/// Single-frequency Bogoliubov result Omega = omega + B.
double bogoliubov_frequency(double omega, double b_field);

}  // namespace ncqm::algebra
