#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"
#include "qwcount/phase_estimation.hpp"

#include <cmath>
#include <numeric>
#include <random>

using namespace qwcount;

TEST_CASE("kernel agrees with the brute-force Fourier inner product") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> angle(0.0, 2 * oracle::pi);
    for (std::size_t grid : {2u, 8u, 64u}) {
        for (int i = 0; i < 50; ++i) {
            const double theta = angle(rng);
            const double omega = grid_phase(static_cast<std::size_t>(i) % grid, grid);
            CHECK(std::abs(fourier_kernel(theta, omega, grid) - oracle::brute_kernel(theta, omega, grid)) < 1e-12);
        }
        CHECK(fourier_kernel(grid_phase(1, grid), grid_phase(1, grid), grid) == 1.0);
    }
}

TEST_CASE("midpoint kernel at P = 8") {
    const double theta = 2 * oracle::pi * 0.5 / 8.0;
    CHECK(std::abs(fourier_kernel(theta, 0.0, 8) - oracle::midpoint_kernel_p3) < 1e-15);
    CHECK(std::abs(good_estimate_mass(theta, 8) - oracle::midpoint_pair_mass_p3) < 1e-13);
}

TEST_CASE("two-neighbour mass never drops below 8/pi^2") {
    for (std::size_t grid : {4u, 16u, 256u}) {
        double worst = 1.0;
        for (int i = 0; i <= 2000; ++i) worst = std::min(worst, good_estimate_mass(2 * oracle::pi * i / 2000.0, grid));
        CHECK(worst >= oracle::good_estimate_floor - 1e-12);
    }
}

TEST_CASE("grid neighbours") {
    CHECK(grid_neighbors(2 * oracle::pi * 2.5 / 8, 8) == std::pair<std::size_t, std::size_t>{2, 3});
    CHECK(grid_neighbors(2 * oracle::pi * 7.5 / 8, 8) == std::pair<std::size_t, std::size_t>{7, 0});
    CHECK(grid_neighbors(grid_phase(3, 8), 8) == std::pair<std::size_t, std::size_t>{3, 3});
}

TEST_CASE("exact distribution is normalised") {
    const EigenphaseMixture mix{{0.3, 0.25}, {1.9, 0.5}, {5.0, 0.25}};
    for (int p = 1; p <= 10; ++p) {
        const auto dist = exact_distribution(mix, p);
        const double total = std::accumulate(dist.masses().begin(), dist.masses().end(), 0.0);
        CHECK(std::abs(total - 1.0) < 1e-10);
    }
    CHECK_THROWS_AS(exact_distribution(mix, 0), std::invalid_argument);
    CHECK_THROWS_AS(exact_distribution(mix, kMaxAnalyticQubits + 1), ResourceLimitError);
}

TEST_CASE("inverse QFT matches a dense inverse DFT") {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> g;
    for (int p = 1; p <= 5; ++p) {
        const std::size_t n = std::size_t{1} << p;
        std::vector<Complex> in(n);
        for (auto& z : in) z = Complex(g(rng), g(rng));
        std::vector<Complex> state = in;
        apply_inverse_qft(state, p, 1);
        const auto expected = oracle::dense_inverse_dft(in);
        for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(state[i] - expected[i]) < 1e-12);
    }
}

TEST_CASE("circuit and analytic routes agree on a rotation") {
    const double t = 0.9;
    const auto u = rotation(t);
    const ComplexVector psi(std::vector<Complex>{1.0, 0.0});
    // |0> = (|+i> + |-i>)/sqrt2 with eigenphases -t and +t.
    const EigenphaseMixture mix{{wrap_phase(t), 0.5}, {wrap_phase(-t), 0.5}};
    for (int p = 1; p <= 7; ++p)
        CHECK(total_variation(circuit_distribution(u, psi, p), exact_distribution(mix, p)) < 1e-12);
}

TEST_CASE("circuit input validation") {
    const ComplexVector psi(std::vector<Complex>{1.0, 0.0});
    CHECK_THROWS_AS(circuit_distribution(ComplexMatrix(2, 2, {1.0, 1.0, 0.0, 1.0}), psi, 3), std::invalid_argument);
    CHECK_THROWS_AS(circuit_distribution(rotation(0.1), ComplexVector(std::vector<Complex>{1.0, 1.0}), 3),
                    std::invalid_argument);
    CHECK_THROWS_AS(circuit_distribution(rotation(0.1), psi, kMaxCircuitQubits + 1), ResourceLimitError);
}

TEST_CASE("PhaseDistribution validation") {
    CHECK_THROWS_AS(PhaseDistribution(2, {0.5, 0.5, 0.5, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(PhaseDistribution(2, {1.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(PhaseDistribution(1, {1.1, -0.1}), std::invalid_argument);
    const PhaseDistribution d(1, {1.0 + 1e-15, -1e-15});
    CHECK(d.mass(1) == 0.0);
}

TEST_CASE("sampling is seeded and follows the distribution") {
    const PhaseDistribution d(2, {0.1, 0.2, 0.3, 0.4});
    CHECK(sample_indices(d, 42, 1000) == sample_indices(d, 42, 1000));
    CHECK(sample_indices(d, 42, 1000) != sample_indices(d, 43, 1000));
    const std::size_t n = 200000;
    std::vector<std::size_t> counts(4, 0);
    for (auto m : sample_indices(d, 5, n)) ++counts[m];
    for (std::size_t m = 0; m < 4; ++m) {
        const double q = d.mass(m);
        const double sd = std::sqrt(q * (1 - q) / static_cast<double>(n));
        CHECK(std::abs(static_cast<double>(counts[m]) / n - q) < 4 * sd);
    }
    const PhaseDistribution point(3, {0, 0, 0, 0, 0, 1, 0, 0});
    for (auto m : sample_indices(point, 1, 100)) CHECK(m == 5);
    CHECK(sample(point, 1, 1).front() == doctest::Approx(2 * oracle::pi * 5 / 8));
}
