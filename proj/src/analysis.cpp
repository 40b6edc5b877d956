#include "qwcount/analysis.hpp"

#include "qwcount/reduced_model.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace qwcount {

BoundReport bound_satisfaction_mass(const BipartiteInstance& inst, int part, int qubits, Engine engine) {
    const CountDistribution dist = partial_count_distribution(qubits, inst, part, engine);
    return {dist.bound, dist.success_mass(), kGoodEstimateProbability};
}

BoundReport joint_success_mass(const BipartiteInstance& inst, int qubits, Engine engine) {
    const JointCountDistribution dist = full_count_distribution(qubits, inst, engine);
    return {dist.bound, dist.success_mass(), kJointSuccessProbability};
}

double good_estimate_count_mass(const CountDistribution& dist) {
    const std::size_t grid = dist.outcomes.size();
    const double half = 0.5 * part_angle(dist.n_target, dist.k_true);
    const auto [lo, hi] = grid_neighbors(half, grid);
    const double a = grid_phase(lo, grid);
    const double b = grid_phase(hi, grid);
    double mass = 0.0;
    for (const auto& o : dist.outcomes)
        if (std::abs(o.theta_est - a) < 1e-12 || std::abs(o.theta_est - b) < 1e-12) mass += o.mass;
    return mass;
}

// ---------------------------------------------------------------------------------------------
// Sweep configuration

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::size_t parse_count(std::string_view s, const std::string& where) {
    std::size_t value = 0;
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, value);
    if (s.empty() || ec != std::errc{} || ptr != end)
        throw std::invalid_argument(where + ": expected a non-negative integer, got '" + std::string(s) + "'");
    return value;
}

std::vector<std::size_t> parse_int_list(std::string_view value, const std::string& where) {
    std::vector<std::size_t> out;
    for (auto item : split(value, ',')) {
        const auto dots = item.find("..");
        if (dots == std::string_view::npos) {
            out.push_back(parse_count(item, where));
            continue;
        }
        const std::size_t lo = parse_count(trim(item.substr(0, dots)), where);
        const std::size_t hi = parse_count(trim(item.substr(dots + 2)), where);
        if (lo > hi) throw std::invalid_argument(where + ": empty range '" + std::string(item) + "'");
        for (std::size_t v = lo; v <= hi; ++v) out.push_back(v);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    if (out.empty()) throw std::invalid_argument(where + ": empty list");
    return out;
}

}  // namespace

SweepConfig parse_sweep_config(std::string_view text) {
    SweepConfig cfg;
    std::map<std::string, std::string> seen;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto end = text.find('\n', start);
        std::string_view line = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
        start = end == std::string_view::npos ? text.size() + 1 : end + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const std::string where = "sweep config line " + std::to_string(line_no);
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw std::invalid_argument(where + ": expected 'key = value'");
        const std::string key(trim(line.substr(0, eq)));
        const std::string_view value = trim(line.substr(eq + 1));
        if (!seen.emplace(key, std::string(value)).second)
            throw std::invalid_argument(where + ": repeated key '" + key + "'");

        if (key == "n0") {
            cfg.n0 = parse_int_list(value, where);
        } else if (key == "n1") {
            cfg.n1 = parse_int_list(value, where);
        } else if (key == "k0" || key == "k1") {
            auto& target = key == "k0" ? cfg.k0 : cfg.k1;
            if (value == "all")
                target.reset();
            else
                target = parse_int_list(value, where);
        } else if (key == "p") {
            cfg.p.clear();
            for (auto v : parse_int_list(value, where)) cfg.p.push_back(static_cast<int>(v));
        } else if (key == "checks") {
            cfg.check_thm2 = cfg.check_thm3 = false;
            for (auto item : split(value, ',')) {
                if (item == "thm2")
                    cfg.check_thm2 = true;
                else if (item == "thm3")
                    cfg.check_thm3 = true;
                else
                    throw std::invalid_argument(where + ": unknown check '" + std::string(item) + "'");
            }
        } else if (key == "format") {
            if (value == "csv")
                cfg.format = OutputFormat::csv;
            else if (value == "json")
                cfg.format = OutputFormat::json;
            else
                throw std::invalid_argument(where + ": format must be csv or json");
        } else {
            throw std::invalid_argument(where + ": unknown key '" + key + "'");
        }
    }
    if (cfg.n0.empty() || cfg.n1.empty() || cfg.p.empty())
        throw std::invalid_argument("sweep config: n0, n1 and p are required");
    if (cfg.n0.front() == 0 || cfg.n1.front() == 0)
        throw std::invalid_argument("sweep config: part sizes must be positive");
    if (cfg.p.front() < 1 || cfg.p.back() > kMaxAnalyticQubits)
        throw std::invalid_argument("sweep config: p out of range");
    return cfg;
}

SweepConfig load_sweep_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open sweep config '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_sweep_config(buf.str());
}

// ---------------------------------------------------------------------------------------------
// Sweep

std::size_t SweepResult::violations() const {
    return static_cast<std::size_t>(std::count_if(records.begin(), records.end(),
                                                  [](const SweepRecord& r) { return !r.passed(); }));
}

std::size_t worker_count_from_env() {
    if (const char* env = std::getenv("QWCOUNT_THREADS")) {
        std::size_t n = 0;
        const std::string_view s(env);
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
        if (ec == std::errc{} && ptr == s.data() + s.size() && n > 0) return n;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

struct SweepPoint {
    std::size_t n0, n1, k0, k1;
    int p;
};

SweepRecord evaluate_point(const SweepPoint& pt, const SweepConfig& cfg) {
    const BipartiteInstance inst = BipartiteInstance::from_counts(pt.n0, pt.n1, pt.k0, pt.k1);
    const WalkAngles angles = angles_from_instance(inst);
    const JointCountDistribution joint = full_count_distribution(pt.p, inst);

    SweepRecord r;
    r.n0 = pt.n0;
    r.n1 = pt.n1;
    r.k0 = pt.k0;
    r.k1 = pt.k1;
    r.p = pt.p;
    r.theta0 = angles.theta0;
    r.theta1 = angles.theta1;
    r.mu = angles.mu;
    r.sigma = angles.sigma;
    r.bound_part0 = joint.part0.bound;
    r.bound_part1 = joint.part1.bound;
    r.bound_total = joint.bound;
    r.thm2_mass_part0 = joint.part0.success_mass();
    r.thm2_mass_part1 = joint.part1.success_mass();
    r.thm3_mass = joint.success_mass();
    r.good_mass_part0 = good_estimate_count_mass(joint.part0);
    r.good_mass_part1 = good_estimate_count_mass(joint.part1);
    if (cfg.check_thm2) {
        r.pass_part0 = r.thm2_mass_part0 >= kGoodEstimateProbability - kMassTolerance;
        r.pass_part1 = r.thm2_mass_part1 >= kGoodEstimateProbability - kMassTolerance;
    }
    if (cfg.check_thm3) r.pass_joint = r.thm3_mass >= kJointSuccessProbability - kMassTolerance;
    return r;
}

std::vector<std::size_t> all_counts(std::size_t n) {
    std::vector<std::size_t> out(n + 1);
    for (std::size_t k = 0; k <= n; ++k) out[k] = k;
    return out;
}

}  // namespace

SweepResult run_sweep(const SweepConfig& cfg, std::size_t workers, std::ostream* log) {
    SweepResult result;
    std::vector<SweepPoint> points;
    for (auto n0 : cfg.n0) {
        for (auto n1 : cfg.n1) {
            const auto k0s = cfg.k0 ? *cfg.k0 : all_counts(n0);
            const auto k1s = cfg.k1 ? *cfg.k1 : all_counts(n1);
            for (auto k0 : k0s) {
                for (auto k1 : k1s) {
                    if (k0 > n0 || k1 > n1) {
                        result.skipped += cfg.p.size();
                        if (log)
                            *log << "sweep: skipping infeasible point n0=" << n0 << " n1=" << n1 << " k0=" << k0
                                 << " k1=" << k1 << '\n';
                        continue;
                    }
                    for (int p : cfg.p) points.push_back({n0, n1, k0, k1, p});
                }
            }
        }
    }

    result.records.resize(points.size());
    const std::size_t n_workers = std::min(points.size(), workers == 0 ? worker_count_from_env() : workers);
    if (n_workers <= 1) {
        for (std::size_t i = 0; i < points.size(); ++i) result.records[i] = evaluate_point(points[i], cfg);
        return result;
    }

    // Each record is a pure function of its point; workers only decide who computes it.
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(n_workers);
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < n_workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = next++; i < points.size(); i = next++)
                    result.records[i] = evaluate_point(points[i], cfg);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return result;
}

// ---------------------------------------------------------------------------------------------
// Verification suite

bool VerifyReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

namespace {

class CheckList {
public:
    explicit CheckList(double mass_tolerance) : mass_tolerance_(mass_tolerance) {}

    void at_most(std::string name, double value, double limit) {
        checks_.push_back({std::move(name), value, limit, false, std::isfinite(value) && value <= limit});
    }
    void at_least(std::string name, double value, double limit) {
        checks_.push_back({std::move(name), value, limit, true, value >= limit - mass_tolerance_});
    }
    std::vector<CheckResult> release() { return std::move(checks_); }

private:
    double mass_tolerance_;
    std::vector<CheckResult> checks_;
};

double involution_defect(const ComplexMatrix& m) {
    return max_abs_diff(mat_mul(m, m), ComplexMatrix::identity(m.rows()));
}

}  // namespace

VerifyReport verify_suite(const BipartiteInstance& inst, int qubits, const VerifyTolerances& tol,
                          const VerifyOptions& options) {
    if (inst.edge_count() > kMaxVerifyEdges)
        throw ResourceLimitError("verify: graph has " + std::to_string(inst.edge_count()) + " edges, limit is " +
                                 std::to_string(kMaxVerifyEdges));
    if (qubits < 1 || qubits > kMaxCircuitQubits) throw std::invalid_argument("verify: p out of range");

    CheckList checks(tol.mass);

    const ComplexMatrix shift = build_shift(inst);
    const ComplexMatrix coin = build_coin(inst);
    ComplexMatrix oracle = build_oracle(inst);
    if (options.corrupt_arc) {
        if (*options.corrupt_arc >= inst.arc_count()) throw std::invalid_argument("verify: corrupt arc out of range");
        oracle(*options.corrupt_arc, *options.corrupt_arc) *= -1.0;
    }
    const ComplexMatrix part0 = build_part_oracle(inst, 0);
    const ComplexMatrix part1 = build_part_oracle(inst, 1);
    const ComplexMatrix ancilla0 = build_ancilla_oracle(inst, 0);
    const ComplexMatrix ancilla1 = build_ancilla_oracle(inst, 1);
    const ComplexMatrix u = build_evolution(inst, oracle);

    checks.at_most("unitarity_S", unitarity_defect(shift), tol.structural);
    checks.at_most("unitarity_C", unitarity_defect(coin), tol.structural);
    checks.at_most("unitarity_R", unitarity_defect(oracle), tol.structural);
    checks.at_most("unitarity_R0", unitarity_defect(part0), tol.structural);
    checks.at_most("unitarity_R1", unitarity_defect(part1), tol.structural);
    checks.at_most("unitarity_ancilla_R0", unitarity_defect(ancilla0), tol.structural);
    checks.at_most("unitarity_ancilla_R1", unitarity_defect(ancilla1), tol.structural);
    checks.at_most("unitarity_U", unitarity_defect(u), tol.structural);

    checks.at_most("involution_S", involution_defect(shift), tol.involution);
    checks.at_most("involution_C", involution_defect(coin), tol.involution);
    checks.at_most("involution_R", involution_defect(oracle), tol.involution);
    checks.at_most("oracle_split_R_eq_R0_R1", max_abs_diff(oracle, mat_mul(part0, part1)), tol.involution);

    checks.at_most("ancilla_restriction_R0", max_abs_diff(restrict_to_ancilla_plus(ancilla0), part0), tol.involution);
    checks.at_most("ancilla_restriction_R1", max_abs_diff(restrict_to_ancilla_plus(ancilla1), part1), tol.involution);
    checks.at_most("ancilla_returns_plus_R0", ancilla_minus_leakage(ancilla0), tol.involution);
    checks.at_most("ancilla_returns_plus_R1", ancilla_minus_leakage(ancilla1), tol.involution);

    const WalkAngles angles = angles_from_instance(inst);
    const InvariantBasis basis = invariant_basis(inst);
    const ReducedOperator reduced = reduce_operator(u, basis);
    checks.at_most("invariance_leakage", reduced.leakage, tol.structural);
    checks.at_most("u_red_reconciliation", max_abs_diff(reduced.matrix, reconciled_u_red(angles, basis)),
                   tol.structural);

    // |d> expressed in the invariant basis must match the closed-form coefficients and leave
    // nothing outside the span.
    {
        const ComplexVector d = uniform_state(inst);
        const ComplexVector d_red = reduced_uniform_state(angles);
        ComplexVector residual = d;
        double worst = 0.0;
        for (std::size_t i = 0; i < basis.vectors.size(); ++i) {
            const Complex c = inner(basis.vectors[i], d);
            worst = std::max(worst, std::abs(c - d_red[basis.slots[i]]));
            for (std::size_t a = 0; a < d.dim(); ++a) residual[a] -= c * basis.vectors[i][a];
        }
        for (std::size_t s = 0; s < 8; ++s)
            if (!basis.present[s]) worst = std::max(worst, std::abs(d_red[s]));
        checks.at_most("uniform_state_projection", std::max(worst, residual.norm()), tol.spectral);
    }

    const SpectralDecomposition spectrum = spectral_decomposition(angles);
    const ComplexMatrix u_red = build_u_red(angles);
    const std::vector<PhaseWeight> table = eigenphase_table(angles);
    {
        double residual = 0.0;
        double table_gap = 0.0;
        double overlap_sum = 0.0;
        std::vector<ComplexVector> vectors;
        for (const auto& pair : spectrum.pairs) {
            residual = std::max(residual, eigen_residual(u_red, pair.eigenvalue, pair.eigenvector));
            const PhaseWeight& row = table[table_slot(pair.label)];
            const double phase_gap = std::abs(std::remainder(pair.eigenphase - row.phase, 2.0 * kPi));
            table_gap = std::max({table_gap, std::abs(pair.initial_overlap - row.weight), phase_gap});
            overlap_sum += pair.initial_overlap;
            vectors.push_back(pair.eigenvector);
        }
        checks.at_most("eigen_residual", residual, tol.spectral);
        checks.at_most("eigen_gram_defect", gram_defect(vectors), tol.spectral);
        checks.at_most("table_overlap_identity", table_gap, tol.spectral);
        checks.at_most("overlap_sum", std::abs(overlap_sum - 1.0), tol.spectral);
    }

    {
        const PhaseDistribution analytic = exact_distribution(table, qubits);
        const PhaseDistribution circuit = circuit_distribution(u, uniform_state(inst), qubits);
        checks.at_most("pe_analytic_vs_circuit_tv", total_variation(analytic, circuit), tol.cross_mode);
    }

    const JointCountDistribution joint = full_count_distribution(qubits, inst);
    checks.at_least("thm2_mass_part0", joint.part0.success_mass(), kGoodEstimateProbability);
    checks.at_least("thm2_mass_part1", joint.part1.success_mass(), kGoodEstimateProbability);
    checks.at_least("thm3_joint_mass", joint.success_mass(), kJointSuccessProbability);

    return VerifyReport{checks.release()};
}

}  // namespace qwcount
