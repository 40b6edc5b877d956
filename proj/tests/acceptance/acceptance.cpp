// Acceptance criteria: one PASS/FAIL line per criterion. Exit status is nonzero if any fails.

#include "oracles.hpp"
#include "qwcount/analysis.hpp"
#include "qwcount/cli.hpp"
#include "qwcount/counting.hpp"
#include "qwcount/phase_estimation.hpp"
#include "qwcount/reduced_model.hpp"
#include "qwcount/walk_space.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace qwcount;

namespace {

struct Outcome {
    bool passed;
    std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, double budget_s, const std::function<Outcome()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out{false, ""};
    try {
        out = body();
    } catch (const std::exception& e) {
        out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > budget_s) {
        out.passed = false;
        out.detail += " [over time budget]";
    }
    if (!out.passed) ++failures;
    std::printf("AC%-2d %s  %-44s %8.3f s (budget %g s)  %s\n", id, out.passed ? "PASS" : "FAIL", title, secs,
                budget_s, out.detail.c_str());
    std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

std::vector<std::size_t> subset(std::size_t n, unsigned mask) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n; ++i)
        if (mask & (1u << i)) out.push_back(i);
    return out;
}

std::vector<std::size_t> random_subset(std::size_t n, std::mt19937_64& rng) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n; ++i)
        if (rng() & 1u) out.push_back(i);
    return out;
}

BipartiteInstance k43() { return BipartiteInstance(4, 3, {1, 3}, {1}); }

double involution_defect(const ComplexMatrix& m) {
    return max_abs_diff(mat_mul(m, m), ComplexMatrix::identity(m.rows()));
}

bool on_grid(double phase, std::size_t grid) {
    const double x = phase * static_cast<double>(grid) / (2.0 * oracle::pi);
    return std::abs(x - std::round(x)) < 1e-9;
}

std::string capture(const char* cmd) {
    std::string out;
    if (FILE* pipe = popen(cmd, "r")) {
        std::array<char, 4096> buf;
        std::size_t n;
        while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
        pclose(pipe);
    }
    return out;
}

}  // namespace

int main() {
    std::mt19937_64 rng(20240611);

    criterion(1, "structural identities", 1.0, [&] {
        std::mt19937_64 local(1);
        std::vector<BipartiteInstance> cases{k43(), BipartiteInstance(5, 7, random_subset(5, local),
                                                                       random_subset(7, local))};
        double unitary = 0.0, involution = 0.0;
        for (const auto& inst : cases) {
            const auto s = build_shift(inst);
            const auto c = build_coin(inst);
            const auto r = build_oracle(inst);
            for (const auto* m : {&s, &c, &r}) {
                unitary = std::max(unitary, unitarity_defect(*m));
                involution = std::max(involution, involution_defect(*m));
            }
            for (int j = 0; j < 2; ++j) {
                unitary = std::max(unitary, unitarity_defect(build_part_oracle(inst, j)));
                unitary = std::max(unitary, unitarity_defect(build_ancilla_oracle(inst, j)));
            }
            unitary = std::max(unitary, unitarity_defect(build_evolution(inst, r)));
        }
        return Outcome{unitary < 1e-10 && involution < 1e-12,
                       fmt("max unitarity defect %.3g", unitary) + fmt(", max involution defect %.3g", involution)};
    });

    criterion(2, "invariant subspace, every marking n<=5", 30.0, [&] {
        double leak = 0.0, recon = 0.0;
        std::size_t count = 0;
        for (std::size_t n0 = 1; n0 <= 5; ++n0)
            for (std::size_t n1 = 1; n1 <= 5; ++n1)
                for (unsigned m0 = 0; m0 < (1u << n0); ++m0)
                    for (unsigned m1 = 0; m1 < (1u << n1); ++m1) {
                        const BipartiteInstance inst(n0, n1, subset(n0, m0), subset(n1, m1));
                        const auto basis = invariant_basis(inst);
                        const auto reduced = reduce_operator(build_evolution(inst, build_oracle(inst)), basis);
                        leak = std::max(leak, reduced.leakage);
                        recon = std::max(recon, max_abs_diff(reduced.matrix,
                                                             reconciled_u_red(angles_from_instance(inst), basis)));
                        ++count;
                    }
        return Outcome{leak < 1e-10 && recon < 1e-10, std::to_string(count) + " markings" +
                                                          fmt(", max leakage %.3g", leak) +
                                                          fmt(", max reconciliation gap %.3g", recon)};
    });

    std::vector<WalkAngles> grid;
    {
        std::uniform_real_distribution<double> angle(0.0, oracle::pi);
        for (int i = 0; i < 100; ++i) grid.push_back(WalkAngles::from_thetas(angle(rng), angle(rng)));
    }

    criterion(3, "closed-form eigenpairs", 1.0, [&] {
        double residual = 0.0, gram = 0.0;
        for (const auto& a : grid) {
            const auto u = build_u_red(a);
            const auto spectrum = spectral_decomposition(a);
            std::vector<ComplexVector> vectors;
            for (const auto& pair : spectrum.pairs) {
                residual = std::max(residual, eigen_residual(u, pair.eigenvalue, pair.eigenvector));
                vectors.push_back(pair.eigenvector);
            }
            gram = std::max(gram, gram_defect(vectors));
        }
        return Outcome{residual < 1e-12 && gram < 1e-12,
                       fmt("max residual %.3g", residual) + fmt(", max Gram defect %.3g", gram)};
    });

    criterion(4, "initial-state overlaps", 1.0, [&] {
        double gap = 0.0, sum_gap = 0.0;
        for (const auto& a : grid) {
            const double cs = std::cos(a.sigma / 2), ss = std::sin(a.sigma / 2);
            const double cm = std::cos(a.mu / 2), sm = std::sin(a.mu / 2);
            double sum = 0.0;
            for (const auto& pair : spectral_decomposition(a).pairs) {
                double expected = 0.0;
                switch (pair.label) {
                    case EigenLabel::MuPlus:
                    case EigenLabel::MuPlusConj: expected = cs * cs / 4; break;
                    case EigenLabel::MuMinus:
                    case EigenLabel::MuMinusConj: expected = ss * ss / 4; break;
                    case EigenLabel::SigmaPlus:
                    case EigenLabel::SigmaPlusConj: expected = cm * cm / 4; break;
                    case EigenLabel::SigmaMinus:
                    case EigenLabel::SigmaMinusConj: expected = sm * sm / 4; break;
                }
                gap = std::max(gap, std::abs(pair.initial_overlap - expected));
                sum += pair.initial_overlap;
            }
            sum_gap = std::max(sum_gap, std::abs(sum - 1.0));
        }
        return Outcome{gap < 1e-12 && sum_gap < 1e-12,
                       fmt("max overlap gap %.3g", gap) + fmt(", max |sum - 1| %.3g", sum_gap)};
    });

    criterion(5, "phase estimation: analytic vs circuit", 60.0, [&] {
        std::vector<BipartiteInstance> cases{k43()};
        std::mt19937_64 local(5);
        std::uniform_int_distribution<std::size_t> size(1, 5);
        while (cases.size() < 11) {
            const std::size_t n0 = size(local), n1 = size(local);
            cases.emplace_back(n0, n1, random_subset(n0, local), random_subset(n1, local));
        }
        double tv = 0.0;
        for (const auto& inst : cases) {
            const auto table = eigenphase_table(angles_from_instance(inst));
            const auto u = build_evolution(inst, build_oracle(inst));
            const auto d = uniform_state(inst);
            for (int p = 3; p <= 6; ++p)
                tv = std::max(tv, total_variation(exact_distribution(table, p), circuit_distribution(u, d, p)));
        }
        double norm = 0.0;
        const auto table = eigenphase_table(angles_from_instance(k43()));
        for (int p = 1; p <= 10; ++p) {
            const auto dist = exact_distribution(table, p);
            norm = std::max(norm, std::abs(std::accumulate(dist.masses().begin(), dist.masses().end(), 0.0) - 1.0));
        }
        return Outcome{tv < kCrossModeTolerance && norm < 1e-10,
                       fmt("max TV %.3g", tv) + fmt(", max |sum - 1| %.3g", norm)};
    });

    criterion(6, "good-estimate bound", 10.0, [&] {
        double worst = 1.0;
        for (int p = 1; p <= 10; ++p) {
            const std::size_t P = std::size_t{1} << p;
            for (int i = 0; i < 10000; ++i)
                worst = std::min(worst, good_estimate_mass(2 * oracle::pi * i / 10000.0, P));
        }
        const double mid = good_estimate_mass(2 * oracle::pi * 0.5 / 8, 8);
        return Outcome{worst >= oracle::good_estimate_floor - 1e-12 && std::abs(mid - 0.82106) < 1e-5 &&
                           std::abs(mid - oracle::midpoint_pair_mass_p3) < 1e-6,
                       fmt("min mass %.15g", worst) + fmt(" vs 8/pi^2 = %.15g", oracle::good_estimate_floor) +
                           fmt(", midpoint P=8 %.12g", mid)};
    });

    criterion(7, "per-part counting bound, n<=8, p in 4..6", 60.0, [&] {
        double worst = 1.0, worst_half = 1.0;
        std::size_t checked = 0, violations = 0;
        std::string where;
        for (std::size_t n0 = 1; n0 <= 8; ++n0)
            for (std::size_t n1 = 1; n1 <= 8; ++n1)
                for (int j = 0; j < 2; ++j) {
                    const std::size_t n = j == 0 ? n0 : n1;
                    for (std::size_t k = 0; k <= n; ++k)
                        for (int p = 4; p <= 6; ++p) {
                            const auto inst = j == 0 ? BipartiteInstance::from_counts(n0, n1, k, 0)
                                                     : BipartiteInstance::from_counts(n0, n1, 0, k);
                            const auto dist = partial_count_distribution(p, inst, j);
                            const double mass = dist.success_mass();
                            ++checked;
                            if (mass < kGoodEstimateProbability - kMassTolerance) ++violations;
                            if (mass < worst) {
                                worst = mass;
                                where = "N=" + std::to_string(n) + " k=" + std::to_string(k) + " p=" +
                                        std::to_string(p);
                            }
                            const std::size_t P = std::size_t{1} << p;
                            worst_half = std::min(worst_half, dist.mass_within(thm2_bound(k, n, P / 2)));
                        }
                }
        // Certainty: theta_j / 2 on the grid.
        bool certain = true;
        for (std::size_t n = 1; n <= 8; ++n)
            for (std::size_t k = 0; k <= n; ++k)
                for (int p = 3; p <= 6; ++p) {
                    const std::size_t P = std::size_t{1} << p;
                    if (!on_grid(part_angle(n, k) / 2, P)) continue;
                    const auto dist = partial_count_distribution(p, BipartiteInstance::from_counts(n, 1, k, 0), 0);
                    certain = certain && std::abs(dist.mass_within(1e-9) - 1.0) < 1e-9;
                }
        const auto example = partial_count_distribution(3, BipartiteInstance::from_counts(4, 1, 2, 0), 0);
        certain = certain && std::abs(example.mass_within(1e-9) - 1.0) < 1e-9;
        return Outcome{violations == 0 && certain,
                       std::to_string(violations) + "/" + std::to_string(checked) + " below 8/pi^2" +
                           fmt(", worst mass %.16g", worst) + " at " + where +
                           (certain ? ", certainty cases exact" : ", certainty cases NOT exact") +
                           fmt("; with the bound at P/2 the worst mass is %.16g", worst_half)};
    });

    criterion(8, "total counting bound, n<=8, p in 4..6", 120.0, [&] {
        double worst = 1.0;
        std::size_t checked = 0, violations = 0;
        bool queries = true;
        std::string where;
        for (std::size_t n0 = 1; n0 <= 8; ++n0)
            for (std::size_t n1 = 1; n1 <= 8; ++n1)
                for (std::size_t k0 = 0; k0 <= n0; ++k0)
                    for (std::size_t k1 = 0; k1 <= n1; ++k1)
                        for (int p = 4; p <= 6; ++p) {
                            const auto joint =
                                full_count_distribution(p, BipartiteInstance::from_counts(n0, n1, k0, k1));
                            const double mass = joint.success_mass();
                            ++checked;
                            queries = queries && joint.oracle_queries == 2 * (std::size_t{1} << p) - 2;
                            if (mass < kJointSuccessProbability - kMassTolerance) ++violations;
                            if (mass < worst) {
                                worst = mass;
                                char buf[96];
                                std::snprintf(buf, sizeof buf, "(n0,n1,k0,k1,p)=(%zu,%zu,%zu,%zu,%d)", n0, n1, k0, k1,
                                              p);
                                where = buf;
                            }
                        }
        return Outcome{violations == 0 && queries,
                       std::to_string(violations) + "/" + std::to_string(checked) + " below 0.65" +
                           fmt(", worst mass %.16g", worst) + " at " + where +
                           (queries ? ", queries = 2P-2" : ", query count WRONG")};
    });

    criterion(9, "Grover counting baseline", 30.0, [&] {
        double worst = 1.0;
        bool certain = true;
        std::size_t exact_cases = 0;
        for (std::size_t n : {4u, 16u, 64u})
            for (std::size_t k = 0; k <= n; ++k)
                for (int p = 4; p <= 8; ++p) {
                    const std::size_t P = std::size_t{1} << p;
                    const auto dist = grover_count_distribution(p, n, k);
                    if (on_grid(grover_angle(n, k), P)) {
                        ++exact_cases;
                        certain = certain && std::abs(dist.mass_within(1e-9) - 1.0) < 1e-9;
                    } else {
                        worst = std::min(worst, dist.success_mass());
                    }
                }
        return Outcome{certain && worst >= kGoodEstimateProbability - kMassTolerance,
                       std::to_string(exact_cases) + " grid-exact cases " + (certain ? "certain" : "NOT certain") +
                           fmt(", worst other mass %.16g", worst)};
    });

    criterion(10, "ancilla oracle circuit, every marking n<=5", 30.0, [&] {
        double gap = 0.0;
        std::size_t count = 0;
        for (std::size_t n0 = 1; n0 <= 5; ++n0)
            for (std::size_t n1 = 1; n1 <= 5; ++n1)
                for (unsigned m0 = 0; m0 < (1u << n0); ++m0)
                    for (unsigned m1 = 0; m1 < (1u << n1); ++m1) {
                        const BipartiteInstance inst(n0, n1, subset(n0, m0), subset(n1, m1));
                        for (int j = 0; j < 2; ++j) {
                            gap = std::max(gap, max_abs_diff(restrict_to_ancilla_plus(build_ancilla_oracle(inst, j)),
                                                             build_part_oracle(inst, j)));
                            ++count;
                        }
                    }
        return Outcome{gap < 1e-12, std::to_string(count) + " (instance, j) pairs" + fmt(", max gap %.3g", gap)};
    });

    criterion(11, "reproducibility and sampling accuracy", 30.0, [&] {
        const std::string cmd = std::string("'") + QWCOUNT_TOOL_PATH +
                                "' count --n0 4 --n1 3 --marked0 1,3 --marked1 1 --p 6 --mode sampled --trials 200 "
                                "--seed 424242 2>/dev/null";
        const std::string a = capture(cmd.c_str());
        const std::string b = capture(cmd.c_str());
        const bool identical = !a.empty() && a == b && a.rfind("trial,seed,part", 0) == 0;

        const auto inst = k43();
        const auto dist = exact_distribution(eigenphase_table(angles_from_instance(inst)), 6);
        const std::size_t n = 100000;
        std::vector<std::size_t> counts(dist.grid_size(), 0);
        for (auto m : sample_indices(dist, 777, n)) ++counts[m];
        double worst_z = 0.0;
        bool within = true;
        for (std::size_t m = 0; m < dist.grid_size(); ++m) {
            const double q = dist.mass(m);
            const double freq = static_cast<double>(counts[m]) / static_cast<double>(n);
            const double sd = std::sqrt(q * (1.0 - q) / static_cast<double>(n));
            if (sd == 0.0) {
                within = within && counts[m] == 0;
                continue;
            }
            worst_z = std::max(worst_z, std::abs(freq - q) / sd);
        }
        within = within && worst_z <= 4.0;
        return Outcome{identical && within, std::string(identical ? "two CLI runs byte-identical" : "CLI runs DIFFER") +
                                                fmt(" (%.0f bytes)", static_cast<double>(a.size())) +
                                                fmt(", max |z| over 64 bins %.3f", worst_z)};
    });

    criterion(12, "negative control: corrupted oracle", 5.0, [&] {
        std::ostringstream out, err;
        const std::vector<std::string> clean{"verify", "--n0", "4", "--n1", "3", "--marked0", "1,3", "--marked1", "1",
                                             "--p", "5"};
        std::vector<std::string> corrupt = clean;
        corrupt.insert(corrupt.end(), {"--corrupt-arc", "3"});
        const int clean_code = run_cli(clean, out, err);
        const int corrupt_code = run_cli(corrupt, out, err);
        return Outcome{clean_code == 0 && corrupt_code == 2,
                       "clean exit " + std::to_string(clean_code) + ", corrupted exit " + std::to_string(corrupt_code)};
    });

    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
