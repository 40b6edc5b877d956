#include "qwcount/phase_estimation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

namespace qwcount {

namespace {

void check_qubits(int qubits, int limit) {
    if (qubits < 1) throw std::invalid_argument("phase register needs at least one qubit");
    if (qubits > limit)
        throw ResourceLimitError("phase register of " + std::to_string(qubits) + " qubits exceeds limit " +
                                 std::to_string(limit));
}

}  // namespace

PhaseDistribution::PhaseDistribution(int qubits, std::vector<double> mass) : qubits_(qubits), mass_(std::move(mass)) {
    if (qubits < 0 || qubits > 62 || mass_.size() != (std::size_t{1} << qubits))
        throw std::invalid_argument("PhaseDistribution: mass vector must have 2^p entries");
    double total = 0.0;
    for (auto& m : mass_) {
        if (!std::isfinite(m) || m < -1e-14) throw std::invalid_argument("PhaseDistribution: negative mass");
        m = std::max(m, 0.0);
        total += m;
    }
    if (std::abs(total - 1.0) > 1e-10)
        throw std::invalid_argument("PhaseDistribution: masses sum to " + std::to_string(total));
}

double PhaseDistribution::omega(std::size_t m) const { return grid_phase(m, grid_size()); }

double grid_phase(std::size_t m, std::size_t grid_size) {
    return 2.0 * kPi * static_cast<double>(m) / static_cast<double>(grid_size);
}

double fourier_kernel(double theta, double omega, std::size_t grid_size) {
    const double p = static_cast<double>(grid_size);
    const double delta = wrap_phase(theta - omega);
    if (delta < 1e-13 || 2.0 * kPi - delta < 1e-13) return 1.0;
    const double num = std::sin(0.5 * p * delta);
    const double den = p * std::sin(0.5 * delta);
    return std::min(1.0, (num * num) / (den * den));
}

std::pair<std::size_t, std::size_t> grid_neighbors(double theta, std::size_t grid_size) {
    const double scaled = wrap_phase(theta) * static_cast<double>(grid_size) / (2.0 * kPi);
    const auto lo = static_cast<std::size_t>(std::floor(scaled));
    const auto hi = static_cast<std::size_t>(std::ceil(scaled));
    return {lo % grid_size, hi % grid_size};
}

double good_estimate_mass(double theta, std::size_t grid_size) {
    const auto [lo, hi] = grid_neighbors(theta, grid_size);
    double mass = fourier_kernel(theta, grid_phase(lo, grid_size), grid_size);
    if (hi != lo) mass += fourier_kernel(theta, grid_phase(hi, grid_size), grid_size);
    return mass;
}

PhaseDistribution exact_distribution(const EigenphaseMixture& mixture, int qubits) {
    check_qubits(qubits, kMaxAnalyticQubits);
    const std::size_t grid = std::size_t{1} << qubits;
    std::vector<double> mass(grid, 0.0);
    for (std::size_t m = 0; m < grid; ++m) {
        const double omega = grid_phase(m, grid);
        double acc = 0.0;
        for (const auto& pw : mixture) acc += pw.weight * fourier_kernel(pw.phase, omega, grid);
        mass[m] = acc;
    }
    return PhaseDistribution(qubits, std::move(mass));
}

void apply_inverse_qft(std::span<Complex> state, int qubits, std::size_t stride) {
    const std::size_t grid = std::size_t{1} << qubits;
    if (state.size() != grid * stride) throw std::invalid_argument("apply_inverse_qft: state size mismatch");
    // Register qubit j (1-based) carries weight 2^(p-j).
    auto weight = [qubits](int j) { return std::size_t{1} << (qubits - j); };
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

    auto swap_qubits = [&](int a, int b) {
        const std::size_t wa = weight(a), wb = weight(b);
        for (std::size_t x = 0; x < grid; ++x) {
            if ((x & wa) && !(x & wb)) {
                const std::size_t y = (x & ~wa) | wb;
                for (std::size_t s = 0; s < stride; ++s) std::swap(state[x * stride + s], state[y * stride + s]);
            }
        }
    };
    auto hadamard = [&](int j) {
        const std::size_t w = weight(j);
        for (std::size_t x = 0; x < grid; ++x) {
            if (x & w) continue;
            for (std::size_t s = 0; s < stride; ++s) {
                Complex& a = state[x * stride + s];
                Complex& b = state[(x | w) * stride + s];
                const Complex a0 = a, b0 = b;
                a = (a0 + b0) * inv_sqrt2;
                b = (a0 - b0) * inv_sqrt2;
            }
        }
    };
    auto controlled_phase = [&](int control, int target, double angle) {
        const std::size_t both = weight(control) | weight(target);
        const Complex phase = std::polar(1.0, angle);
        for (std::size_t x = 0; x < grid; ++x)
            if ((x & both) == both)
                for (std::size_t s = 0; s < stride; ++s) state[x * stride + s] *= phase;
    };

    // Reverse of the textbook QFT circuit with every phase conjugated.
    for (int j = 1; j <= qubits / 2; ++j) swap_qubits(j, qubits + 1 - j);
    for (int j = qubits; j >= 1; --j) {
        for (int k = qubits; k > j; --k)
            controlled_phase(k, j, -2.0 * kPi / static_cast<double>(std::size_t{1} << (k - j + 1)));
        hadamard(j);
    }
}

PhaseDistribution circuit_distribution(const ComplexMatrix& u, const ComplexVector& psi, int qubits) {
    check_qubits(qubits, kMaxCircuitQubits);
    if (!u.is_square() || u.rows() != psi.dim())
        throw std::invalid_argument("circuit_distribution: operator and state dimensions differ");
    if (unitarity_defect(u) > kCrossModeTolerance)
        throw std::invalid_argument("circuit_distribution: operator is not unitary");
    if (std::abs(psi.norm() - 1.0) > kCrossModeTolerance)
        throw std::invalid_argument("circuit_distribution: state is not normalised");

    const std::size_t grid = std::size_t{1} << qubits;
    const std::size_t dim = psi.dim();
    std::vector<Complex> state(grid * dim);

    // Hadamards on |0...0>: every register value carries psi / sqrt(P).
    const double amp = 1.0 / std::sqrt(static_cast<double>(grid));
    for (std::size_t x = 0; x < grid; ++x)
        for (std::size_t s = 0; s < dim; ++s) state[x * dim + s] = amp * psi[s];

    // Qubit j controls u^(2^(p-j)); walk j from p down to 1 so the power is squared each step.
    ComplexMatrix power = u;
    std::vector<Complex> scratch(dim);
    for (int j = qubits; j >= 1; --j) {
        const std::size_t w = std::size_t{1} << (qubits - j);
        for (std::size_t x = 0; x < grid; ++x) {
            if (!(x & w)) continue;
            Complex* row = state.data() + x * dim;
            for (std::size_t r = 0; r < dim; ++r) {
                Complex acc{};
                for (std::size_t c = 0; c < dim; ++c) acc += power(r, c) * row[c];
                scratch[r] = acc;
            }
            std::copy(scratch.begin(), scratch.end(), row);
        }
        if (j > 1) power = mat_mul(power, power);
    }

    apply_inverse_qft(state, qubits, dim);

    std::vector<double> mass(grid, 0.0);
    for (std::size_t x = 0; x < grid; ++x) {
        double acc = 0.0;
        for (std::size_t s = 0; s < dim; ++s) acc += std::norm(state[x * dim + s]);
        mass[x] = acc;
    }
    return PhaseDistribution(qubits, std::move(mass));
}

std::vector<std::size_t> sample_indices(const PhaseDistribution& dist, std::uint64_t seed, std::size_t n) {
    std::vector<double> cdf(dist.grid_size());
    std::partial_sum(dist.masses().begin(), dist.masses().end(), cdf.begin());
    const double total = cdf.back();

    std::mt19937_64 rng(seed);
    std::vector<std::size_t> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53 * total;
        // First cell with cdf > u; it always has positive mass.
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        if (it == cdf.end()) it = std::lower_bound(cdf.begin(), cdf.end(), total);
        out.push_back(static_cast<std::size_t>(it - cdf.begin()));
    }
    return out;
}

std::vector<double> sample(const PhaseDistribution& dist, std::uint64_t seed, std::size_t n) {
    std::vector<double> out;
    out.reserve(n);
    for (auto m : sample_indices(dist, seed, n)) out.push_back(dist.omega(m));
    return out;
}

double total_variation(const PhaseDistribution& a, const PhaseDistribution& b) {
    if (a.grid_size() != b.grid_size()) throw std::invalid_argument("total_variation: grid sizes differ");
    double sum = 0.0;
    for (std::size_t m = 0; m < a.grid_size(); ++m) sum += std::abs(a.mass(m) - b.mass(m));
    return 0.5 * sum;
}

}  // namespace qwcount
