#pragma once

// Counting marked vertices from phase-estimation outcomes: per-part counting with the
// part-restricted oracle, the two-run total count, and the Grover counting baseline.

#include "qwcount/phase_estimation.hpp"
#include "qwcount/walk_space.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace qwcount {

inline constexpr double kGoodEstimateProbability = 8.0 / (kPi * kPi);
inline constexpr double kJointSuccessProbability = 0.65;
/// Absolute slack on |k_est - k| <= bound, so exact hits that pick up rounding still count.
inline constexpr double kBoundSlack = 1e-12;

/// Which route produces the phase-estimation distribution.
enum class Engine { analytic, circuit };

/// x -> 2pi - x if pi < x < 2pi, then x -> pi - x if x > pi/2. Result in [0, pi/2].
double fold_phase(double omega);

/// n_part * sin^2(theta_half).
double estimate_k(double theta_half, std::size_t n_part);

/// Nearest integer, ties to even.
long long round_half_even(double x);

double thm2_bound(std::size_t k, std::size_t n, std::size_t grid_size);
double thm3_bound(std::size_t k0, std::size_t n0, std::size_t k1, std::size_t n1, std::size_t grid_size);
double cor1_bound(std::size_t k, std::size_t n, std::size_t grid_size);

struct CountEstimate {
    double k_est = 0.0;
    long long k_rounded = 0;
    double theta_est = 0.0;  ///< folded phase the estimate was computed from
    int p = 0;
    double bound = 0.0;
    std::size_t oracle_queries = 0;
    std::optional<std::uint64_t> seed;
};

/// One grid outcome pushed through folding and the count formula.
struct CountOutcome {
    std::size_t omega_index = 0;
    double theta_est = 0.0;
    double k_est = 0.0;
    double mass = 0.0;
};

/// Exact pushforward of a phase-estimation distribution onto count estimates.
struct CountDistribution {
    int p = 0;
    std::size_t n_target = 0;
    std::size_t k_true = 0;
    double bound = 0.0;
    std::size_t oracle_queries = 0;
    std::vector<CountOutcome> outcomes;  ///< one per grid point, in grid order

    /// Mass of |k_est - k_true| <= radius (+ kBoundSlack).
    double mass_within(double radius) const;
    double success_mass() const { return mass_within(bound); }
};

/// Two independent per-part runs; joint law is the product measure.
struct JointCountDistribution {
    CountDistribution part0;
    CountDistribution part1;
    std::size_t k_true = 0;
    double bound = 0.0;
    std::size_t oracle_queries = 0;

    /// Mass of |k0_est + k1_est - k_true| <= radius (+ kBoundSlack) over all P^2 pairs.
    double mass_within(double radius) const;
    double success_mass() const { return mass_within(bound); }
};

struct FullCountEstimate {
    CountEstimate part0;
    CountEstimate part1;
    double k_est = 0.0;
    long long k_rounded = 0;
    double bound = 0.0;
    std::size_t oracle_queries = 0;
    std::optional<std::uint64_t> seed;
};

/// Phase-estimation distribution of U_j = S C R_j started from |d>. R_j is built from the full
/// instance, so only the marks in `part` are visible.
PhaseDistribution partial_phase_distribution(int qubits, const BipartiteInstance& inst, int part, Engine engine);

/// Exact pushforward for per-part counting; multiplier n_part; oracle_queries = P - 1.
CountDistribution partial_count_distribution(int qubits, const BipartiteInstance& inst, int part,
                                             Engine engine = Engine::analytic);

/// One run of per-part counting with a single draw from a generator seeded with `seed`.
CountEstimate partial_count_sample(int qubits, const BipartiteInstance& inst, int part, std::uint64_t seed,
                                   Engine engine = Engine::analytic);

/// Runs per-part counting with R_0 then R_1; oracle_queries = 2P - 2.
JointCountDistribution full_count_distribution(int qubits, const BipartiteInstance& inst,
                                               Engine engine = Engine::analytic);

/// Draws part 0 from seed and part 1 from seed + 1.
FullCountEstimate full_count_sample(int qubits, const BipartiteInstance& inst, std::uint64_t seed,
                                    Engine engine = Engine::analytic);

/// Grover operator (2|d><d| - I) R on n elements with the first k marked.
ComplexMatrix build_grover_operator(std::size_t n, std::size_t k);

/// Phase-estimation distribution of the Grover operator on |d>: the mixture {theta, 2pi - theta}
/// with weight 1/2 each (analytic) or the literal circuit on the n-dim operator.
PhaseDistribution grover_phase_distribution(int qubits, std::size_t n, std::size_t k, Engine engine);

/// Grover counting: fold by x -> 2pi - x only, k_est = n sin^2(theta_est / 2).
CountDistribution grover_count_distribution(int qubits, std::size_t n, std::size_t k,
                                            Engine engine = Engine::analytic);
CountEstimate grover_count_sample(int qubits, std::size_t n, std::size_t k, std::uint64_t seed,
                                  Engine engine = Engine::analytic);

/// Rotation angle theta in [0, pi] with sin^2(theta/2) = k/n.
double grover_angle(std::size_t n, std::size_t k);

}  // namespace qwcount
