#pragma once

// Outcome distribution of phase estimation on a p-qubit register, computed two independent
// ways: an analytic Fourier-kernel mixture and a gate-level circuit simulation.

#include "qwcount/linalg.hpp"
#include "qwcount/reduced_model.hpp"

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace qwcount {

/// Largest register accepted by circuit_distribution.
inline constexpr int kMaxCircuitQubits = 12;
/// Largest register accepted by the analytic route.
inline constexpr int kMaxAnalyticQubits = 20;

/// Exact probability mass over the grid {2 pi m / P : 0 <= m < P}, P = 2^p.
class PhaseDistribution {
public:
    /// Masses above -1e-14 are clamped to zero; anything more negative, or a total off by more
    /// than 1e-10, is rejected with std::invalid_argument.
    PhaseDistribution(int qubits, std::vector<double> mass);

    int qubits() const noexcept { return qubits_; }
    std::size_t grid_size() const noexcept { return mass_.size(); }
    double omega(std::size_t m) const;
    double mass(std::size_t m) const { return mass_.at(m); }
    std::span<const double> masses() const noexcept { return mass_; }

    friend bool operator==(const PhaseDistribution&, const PhaseDistribution&) = default;

private:
    int qubits_ = 0;
    std::vector<double> mass_;
};

using EigenphaseMixture = std::vector<PhaseWeight>;

/// 2 pi m / P.
double grid_phase(std::size_t m, std::size_t grid_size);

/// |<F_P(omega)|F_P(theta)>|^2 = sin^2(P d/2) / (P^2 sin^2(d/2)), d = theta - omega; 1 when
/// d is within 1e-13 of a multiple of 2 pi.
double fourier_kernel(double theta, double omega, std::size_t grid_size);

/// Indices of the grid points rounding theta down and up (equal when theta is on the grid).
std::pair<std::size_t, std::size_t> grid_neighbors(double theta, std::size_t grid_size);

/// Kernel mass of the two grid neighbours of theta (counted once if they coincide).
double good_estimate_mass(double theta, std::size_t grid_size);

/// mass(omega) = sum_j weight_j * fourier_kernel(phase_j, omega, 2^p).
PhaseDistribution exact_distribution(const EigenphaseMixture& mixture, int qubits);

/// Gate-level inverse QFT on the first register of a joint state laid out as
/// state[x * stride + s], with register qubit 1 (the most significant bit of x) first.
void apply_inverse_qft(std::span<Complex> state, int qubits, std::size_t stride);

/// Literal simulation of phase estimation: Hadamards on the register, controlled powers
/// u^(2^(p-j)) by repeated squaring, inverse QFT, then the register marginal.
/// Throws std::invalid_argument for a non-unitary u or non-normalised psi, and
/// ResourceLimitError when qubits exceeds kMaxCircuitQubits.
PhaseDistribution circuit_distribution(const ComplexMatrix& u, const ComplexVector& psi, int qubits);

/// n independent grid indices drawn by inverse-CDF from a 64-bit Mersenne Twister seeded
/// with `seed`. Uniforms are built from the top 53 bits, so output is portable.
std::vector<std::size_t> sample_indices(const PhaseDistribution& dist, std::uint64_t seed, std::size_t n);

/// Same draws as sample_indices, returned as grid phases.
std::vector<double> sample(const PhaseDistribution& dist, std::uint64_t seed, std::size_t n);

double total_variation(const PhaseDistribution& a, const PhaseDistribution& b);

}  // namespace qwcount
