#pragma once

// Eight-dimensional invariant subspace of U = SCR and its closed-form spectrum.

#include "qwcount/linalg.hpp"
#include "qwcount/walk_space.hpp"

#include <array>
#include <optional>
#include <string_view>
#include <vector>

namespace qwcount {

struct WalkAngles {
    double theta0 = 0.0;  ///< cos(theta0) = 1 - 2 k0 / n0, in [0, pi]
    double theta1 = 0.0;
    double mu = 0.0;      ///< (theta0 + theta1) / 2
    double sigma = 0.0;   ///< (theta0 - theta1) / 2

    static WalkAngles from_thetas(double theta0, double theta1);
};

/// theta = arccos(1 - 2k/n) for one part.
double part_angle(std::size_t n, std::size_t k);

WalkAngles angles_from_instance(const BipartiteInstance& inst);

/// Basis labels, in the fixed order used for U_RED. The first slot names the tail set.
enum class BasisLabel {
    K0_K1,
    K0_K1bar,
    K0bar_K1,
    K0bar_K1bar,
    K1_K0,
    K1_K0bar,
    K1bar_K0,
    K1bar_K0bar,
};

inline constexpr std::array<BasisLabel, 8> kBasisOrder{
    BasisLabel::K0_K1,  BasisLabel::K0_K1bar,  BasisLabel::K0bar_K1,  BasisLabel::K0bar_K1bar,
    BasisLabel::K1_K0,  BasisLabel::K1_K0bar,  BasisLabel::K1bar_K0,  BasisLabel::K1bar_K0bar,
};

std::string_view label_name(BasisLabel label);

/// Signed permutation taking the projected full-space operator (basis in kBasisOrder) onto
/// build_u_red: reduced[i][j] == sign[i] * sign[j] * u_red[slot[i]][slot[j]]. Determined by
/// projecting U onto the invariant basis of small instances; it is the identity.
struct BasisReconciliation {
    std::array<int, 8> slot;
    std::array<int, 8> sign;
};
inline constexpr BasisReconciliation kBasisReconciliation{
    {0, 1, 2, 3, 4, 5, 6, 7},
    {1, 1, 1, 1, 1, 1, 1, 1},
};

struct InvariantBasis {
    /// Position in kBasisOrder of each returned vector.
    std::vector<std::size_t> slots;
    std::vector<BasisLabel> labels;
    std::vector<ComplexVector> vectors;
    /// present[s] is false when the labelled arc set of slot s is empty.
    std::array<bool, 8> present{};
};

InvariantBasis invariant_basis(const BipartiteInstance& inst);

/// The 4x4 block [[c,-s,0,0],[0,0,-c,s],[-s,-c,0,0],[0,0,s,c]] with c = cos x, s = sin x.
ComplexMatrix walk_block(double x);

/// [[0, walk_block(theta0)], [walk_block(theta1), 0]].
ComplexMatrix build_u_red(const WalkAngles& angles);

struct ReducedOperator {
    ComplexMatrix matrix;  ///< M[i][j] = <b_i| U |b_j>
    double leakage = 0.0;  ///< max_j || U|b_j> - sum_i M[i][j] |b_i> ||
};

ReducedOperator reduce_operator(const ComplexMatrix& u_full, const InvariantBasis& basis);

/// build_u_red mapped through kBasisReconciliation and restricted to the present slots, so it
/// is directly comparable with reduce_operator(U, basis).matrix.
ComplexMatrix reconciled_u_red(const WalkAngles& angles, const InvariantBasis& basis);

/// Coefficients of |d> in the invariant basis: sqrt(|A||B| / (2 n0 n1)) for label (A, B),
/// written with half-angle sines and cosines (k_j / n_j = sin^2(theta_j / 2)).
ComplexVector reduced_uniform_state(const WalkAngles& angles);

enum class EigenLabel { MuPlus, MuPlusConj, SigmaPlus, SigmaPlusConj, MuMinus, MuMinusConj, SigmaMinus, SigmaMinusConj };

std::string_view label_name(EigenLabel label);

struct Eigenpair {
    EigenLabel label;
    Complex eigenvalue;
    double eigenphase = 0.0;  ///< arg(eigenvalue) in [0, 2pi)
    ComplexVector eigenvector;
    double initial_overlap = 0.0;  ///< |<lambda|d_red>|^2
};

struct SpectralDecomposition {
    std::array<Eigenpair, 8> pairs;
};

/// Closed-form eigenpairs of U_RED. Global phases are fixed by entry 4 of every eigenvector
/// being the real number 1/sqrt(8).
SpectralDecomposition spectral_decomposition(const WalkAngles& angles);

/// Row of eigenphase_table whose phase equals the eigenvalue's phase (and weight its overlap).
std::size_t table_slot(EigenLabel label);

struct PhaseWeight {
    double phase = 0.0;  ///< radians in [0, 2pi)
    double weight = 0.0;
};

/// The eight eigenphases of U with the probability that phase estimation on |d> lands on each:
/// +-mu: cos^2(sigma/2)/4, +-(pi-mu): sin^2(sigma/2)/4, +-sigma: cos^2(mu/2)/4,
/// +-(pi-sigma): sin^2(mu/2)/4.
std::vector<PhaseWeight> eigenphase_table(const WalkAngles& angles);

/// Reduce an angle to [0, 2pi).
double wrap_phase(double x);

}  // namespace qwcount
