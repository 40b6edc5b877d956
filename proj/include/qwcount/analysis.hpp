#pragma once

// Exact success probabilities, parameter sweeps and the consolidated verification suite.

#include "qwcount/counting.hpp"
#include "qwcount/walk_space.hpp"

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qwcount {

/// Slack allowed below a probability threshold before a mass check fails.
inline constexpr double kMassTolerance = 1e-9;
/// verify_suite builds full arc-space operators; it refuses graphs with more edges.
inline constexpr std::size_t kMaxVerifyEdges = 64;

struct BoundReport {
    double bound_value = 0.0;
    double satisfied_mass = 0.0;
    double threshold = 0.0;

    bool passed(double tolerance = kMassTolerance) const { return satisfied_mass >= threshold - tolerance; }
};

/// Mass of |k_j_est - k_j| <= thm2_bound under per-part counting of `part`; threshold 8/pi^2.
BoundReport bound_satisfaction_mass(const BipartiteInstance& inst, int part, int qubits,
                                    Engine engine = Engine::analytic);

/// Joint mass of |k_est - k| <= thm3_bound under the two-run total count; threshold 0.65.
BoundReport joint_success_mass(const BipartiteInstance& inst, int qubits, Engine engine = Engine::analytic);

/// Mass of outcomes whose folded phase is one of the two grid neighbours of the true folded
/// phase theta_j / 2 (diagnostic; at least 8/pi^2 whenever the phase-estimation kernel is exact).
double good_estimate_count_mass(const CountDistribution& dist);

enum class OutputFormat { csv, json };

struct SweepConfig {
    std::vector<std::size_t> n0;
    std::vector<std::size_t> n1;
    std::optional<std::vector<std::size_t>> k0;  ///< nullopt: every k in [0, n0]
    std::optional<std::vector<std::size_t>> k1;
    std::vector<int> p;
    bool check_thm2 = true;
    bool check_thm3 = true;
    OutputFormat format = OutputFormat::csv;
};

/// Parses `key = value` lines. Keys: n0, n1, k0, k1, p (ranges `lo..hi`, comma lists, and
/// `all` for k0/k1), checks (comma list of thm2, thm3), format (csv|json). `#` starts a
/// comment. Unknown or repeated keys are errors (std::invalid_argument naming the line).
SweepConfig parse_sweep_config(std::string_view text);
SweepConfig load_sweep_config(const std::string& path);

struct SweepRecord {
    std::size_t n0 = 0, n1 = 0, k0 = 0, k1 = 0;
    int p = 0;
    double theta0 = 0.0, theta1 = 0.0, mu = 0.0, sigma = 0.0;
    double bound_part0 = 0.0, bound_part1 = 0.0, bound_total = 0.0;
    double thm2_mass_part0 = 0.0, thm2_mass_part1 = 0.0, thm3_mass = 0.0;
    double good_mass_part0 = 0.0, good_mass_part1 = 0.0;
    bool pass_part0 = true, pass_part1 = true, pass_joint = true;

    bool passed() const { return pass_part0 && pass_part1 && pass_joint; }
};

struct SweepResult {
    std::vector<SweepRecord> records;
    std::size_t skipped = 0;

    std::size_t violations() const;
};

/// Worker count: QWCOUNT_THREADS if set to a positive integer, otherwise hardware concurrency.
std::size_t worker_count_from_env();

/// One record per feasible (n0, n1, k0, k1, p) in lexicographic order. Points with k > n are
/// skipped and reported on `log`. `workers` = 0 means worker_count_from_env().
SweepResult run_sweep(const SweepConfig& cfg, std::size_t workers = 0, std::ostream* log = nullptr);

struct VerifyTolerances {
    double structural = kStructuralTolerance;
    double involution = 1e-12;
    double spectral = 1e-12;
    double cross_mode = kCrossModeTolerance;
    double mass = kMassTolerance;
};

struct VerifyOptions {
    /// Flip the sign of the oracle entry of this arc (negative control).
    std::optional<std::size_t> corrupt_arc;
};

struct CheckResult {
    std::string name;
    double value = 0.0;
    double limit = 0.0;
    bool at_least = false;  ///< value >= limit - mass tolerance, instead of value <= limit
    bool passed = false;
};

struct VerifyReport {
    std::vector<CheckResult> checks;

    bool passed() const;
};

/// Runs every structural, spectral, cross-mode and bound check on one instance.
/// Throws ResourceLimitError when the graph has more than kMaxVerifyEdges edges.
VerifyReport verify_suite(const BipartiteInstance& inst, int qubits, const VerifyTolerances& tol = {},
                          const VerifyOptions& options = {});

}  // namespace qwcount
