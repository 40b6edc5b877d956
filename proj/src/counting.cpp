#include "qwcount/counting.hpp"

#include "qwcount/reduced_model.hpp"

#include <cmath>
#include <stdexcept>

namespace qwcount {

double fold_phase(double omega) {
    double x = omega;
    if (x > kPi && x < 2.0 * kPi) x = 2.0 * kPi - x;
    if (x > 0.5 * kPi) x = kPi - x;
    return x;
}

double estimate_k(double theta_half, std::size_t n_part) {
    const double s = std::sin(theta_half);
    return static_cast<double>(n_part) * s * s;
}

long long round_half_even(double x) {
    // The default floating-point environment rounds to nearest, ties to even.
    return std::llrint(x);
}

double thm2_bound(std::size_t k, std::size_t n, std::size_t grid_size) {
    if (grid_size == 0) throw std::invalid_argument("grid size must be positive");
    const double P = static_cast<double>(grid_size);
    const double kd = static_cast<double>(k);
    const double nd = static_cast<double>(n);
    return 2.0 * kPi * std::sqrt(kd * (nd - kd)) / P + kPi * kPi * nd / (P * P);
}

double thm3_bound(std::size_t k0, std::size_t n0, std::size_t k1, std::size_t n1, std::size_t grid_size) {
    if (grid_size == 0) throw std::invalid_argument("grid size must be positive");
    const double P = static_cast<double>(grid_size);
    const auto root = [](std::size_t k, std::size_t n) {
        return std::sqrt(static_cast<double>(k) * static_cast<double>(n - k));
    };
    return (2.0 * kPi / P) * (root(k0, n0) + root(k1, n1)) +
           kPi * kPi * static_cast<double>(n0 + n1) / (P * P);
}

double cor1_bound(std::size_t k, std::size_t n, std::size_t grid_size) { return thm2_bound(k, n, grid_size); }

double CountDistribution::mass_within(double radius) const {
    const double k = static_cast<double>(k_true);
    double mass = 0.0;
    for (const auto& o : outcomes)
        if (std::abs(o.k_est - k) <= radius + kBoundSlack) mass += o.mass;
    return mass;
}

double JointCountDistribution::mass_within(double radius) const {
    const double k = static_cast<double>(k_true);
    double mass = 0.0;
    for (const auto& a : part0.outcomes) {
        if (a.mass == 0.0) continue;
        double row = 0.0;
        for (const auto& b : part1.outcomes)
            if (std::abs(a.k_est + b.k_est - k) <= radius + kBoundSlack) row += b.mass;
        mass += a.mass * row;
    }
    return mass;
}

namespace {

std::size_t grid_of(int qubits) {
    if (qubits < 1 || qubits > kMaxAnalyticQubits) throw std::invalid_argument("qubit count out of range");
    return std::size_t{1} << qubits;
}

CountEstimate estimate_from_outcome(const CountDistribution& dist, std::size_t m, std::uint64_t seed) {
    const auto& o = dist.outcomes[m];
    return {o.k_est, round_half_even(o.k_est), o.theta_est, dist.p, dist.bound, dist.oracle_queries, seed};
}

std::size_t draw_one(const CountDistribution& dist, std::uint64_t seed) {
    std::vector<double> mass;
    mass.reserve(dist.outcomes.size());
    for (const auto& o : dist.outcomes) mass.push_back(o.mass);
    return sample_indices(PhaseDistribution(dist.p, std::move(mass)), seed, 1).front();
}

}  // namespace

PhaseDistribution partial_phase_distribution(int qubits, const BipartiteInstance& inst, int part, Engine engine) {
    check_part(part);
    if (engine == Engine::circuit) {
        const ComplexMatrix u = build_evolution(inst, build_part_oracle(inst, part));
        return circuit_distribution(u, uniform_state(inst), qubits);
    }
    // R_j marks exactly the arcs leaving K_j, i.e. the walk of the instance without the
    // other part's marks.
    const WalkAngles angles = angles_from_instance(inst.restricted_to_part(part));
    return exact_distribution(eigenphase_table(angles), qubits);
}

CountDistribution partial_count_distribution(int qubits, const BipartiteInstance& inst, int part, Engine engine) {
    check_part(part);
    const std::size_t grid = grid_of(qubits);
    const PhaseDistribution phases = partial_phase_distribution(qubits, inst, part, engine);
    CountDistribution out;
    out.p = qubits;
    out.n_target = inst.part_size(part);
    out.k_true = inst.marked_count(part);
    out.bound = thm2_bound(out.k_true, out.n_target, grid);
    out.oracle_queries = grid - 1;
    out.outcomes.reserve(grid);
    for (std::size_t m = 0; m < grid; ++m) {
        const double theta = fold_phase(phases.omega(m));
        out.outcomes.push_back({m, theta, estimate_k(theta, out.n_target), phases.mass(m)});
    }
    return out;
}

CountEstimate partial_count_sample(int qubits, const BipartiteInstance& inst, int part, std::uint64_t seed,
                                   Engine engine) {
    const CountDistribution dist = partial_count_distribution(qubits, inst, part, engine);
    return estimate_from_outcome(dist, draw_one(dist, seed), seed);
}

JointCountDistribution full_count_distribution(int qubits, const BipartiteInstance& inst, Engine engine) {
    JointCountDistribution out;
    out.part0 = partial_count_distribution(qubits, inst, 0, engine);
    out.part1 = partial_count_distribution(qubits, inst, 1, engine);
    out.k_true = inst.total_marked();
    out.bound = thm3_bound(out.part0.k_true, out.part0.n_target, out.part1.k_true, out.part1.n_target,
                           grid_of(qubits));
    out.oracle_queries = out.part0.oracle_queries + out.part1.oracle_queries;
    return out;
}

FullCountEstimate full_count_sample(int qubits, const BipartiteInstance& inst, std::uint64_t seed, Engine engine) {
    const JointCountDistribution dist = full_count_distribution(qubits, inst, engine);
    FullCountEstimate out;
    out.part0 = estimate_from_outcome(dist.part0, draw_one(dist.part0, seed), seed);
    out.part1 = estimate_from_outcome(dist.part1, draw_one(dist.part1, seed + 1), seed + 1);
    out.k_est = out.part0.k_est + out.part1.k_est;
    out.k_rounded = round_half_even(out.k_est);
    out.bound = dist.bound;
    out.oracle_queries = dist.oracle_queries;
    out.seed = seed;
    return out;
}

double grover_angle(std::size_t n, std::size_t k) {
    if (n == 0) throw std::invalid_argument("grover: need at least one element");
    if (k > n) throw std::invalid_argument("grover: marked count exceeds element count");
    const double nd = static_cast<double>(n);
    const double kd = static_cast<double>(k);
    return 2.0 * std::atan2(std::sqrt(kd), std::sqrt(nd - kd));
}

ComplexMatrix build_grover_operator(std::size_t n, std::size_t k) {
    if (n == 0 || k > n) throw std::invalid_argument("grover: need 0 <= k <= n, n >= 1");
    ComplexMatrix g(n, n);
    const double two_over_n = 2.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double diffusion = two_over_n - (i == j ? 1.0 : 0.0);
            const double oracle = j < k ? -1.0 : 1.0;
            g(i, j) = diffusion * oracle;
        }
    }
    return g;
}

PhaseDistribution grover_phase_distribution(int qubits, std::size_t n, std::size_t k, Engine engine) {
    const double theta = grover_angle(n, k);
    if (engine == Engine::circuit) {
        const double amp = 1.0 / std::sqrt(static_cast<double>(n));
        return circuit_distribution(build_grover_operator(n, k),
                                    ComplexVector(std::vector<Complex>(n, Complex{amp, 0.0})), qubits);
    }
    return exact_distribution({{wrap_phase(theta), 0.5}, {wrap_phase(-theta), 0.5}}, qubits);
}

CountDistribution grover_count_distribution(int qubits, std::size_t n, std::size_t k, Engine engine) {
    const std::size_t grid = grid_of(qubits);
    const PhaseDistribution phases = grover_phase_distribution(qubits, n, k, engine);
    CountDistribution out;
    out.p = qubits;
    out.n_target = n;
    out.k_true = k;
    out.bound = cor1_bound(k, n, grid);
    out.oracle_queries = grid - 1;
    out.outcomes.reserve(grid);
    for (std::size_t m = 0; m < grid; ++m) {
        double theta = phases.omega(m);
        if (theta > kPi) theta = 2.0 * kPi - theta;
        const double s = std::sin(0.5 * theta);
        out.outcomes.push_back({m, theta, static_cast<double>(n) * s * s, phases.mass(m)});
    }
    return out;
}

CountEstimate grover_count_sample(int qubits, std::size_t n, std::size_t k, std::uint64_t seed, Engine engine) {
    const CountDistribution dist = grover_count_distribution(qubits, n, k, engine);
    return estimate_from_outcome(dist, draw_one(dist, seed), seed);
}

}  // namespace qwcount
