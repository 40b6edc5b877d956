#pragma once

// Deterministic CSV / JSON writers. Floating values use 17 significant digits ("%.17g").

#include "qwcount/analysis.hpp"
#include "qwcount/counting.hpp"
#include "qwcount/phase_estimation.hpp"
#include "qwcount/reduced_model.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qwcount {

std::string format_double(double x);

/// Minimal streaming JSON writer with two-space indentation.
class JsonWriter {
public:
    explicit JsonWriter(std::ostream& out) : out_(out) {}

    void begin_object();
    void end_object();
    void begin_array();
    void end_array();
    void key(std::string_view name);

    void value(double x);
    void value(long long x);
    void value(unsigned long long x);
    void value(int x) { value(static_cast<long long>(x)); }
    void value(unsigned long x) { value(static_cast<unsigned long long>(x)); }
    void value(long x) { value(static_cast<long long>(x)); }
    void value(bool b);
    void value(std::string_view s);
    void value(const char* s) { value(std::string_view(s)); }
    void null();

    template <class T>
    void field(std::string_view name, const T& v) {
        key(name);
        value(v);
    }

    /// Terminates the document with a newline.
    void finish();

private:
    void before_value();
    void newline();
    void write_string(std::string_view s);

    std::ostream& out_;
    std::vector<bool> first_;  // per open container: no element written yet
    bool after_key_ = false;
};

struct InstanceSummary {
    std::size_t n0 = 0, n1 = 0, k0 = 0, k1 = 0;
};
InstanceSummary summarize(const BipartiteInstance& inst);

void write_spectrum(std::ostream& out, OutputFormat format, const InstanceSummary& inst, const WalkAngles& angles,
                    const SpectralDecomposition& spectrum, const std::vector<PhaseWeight>& table);

void write_distribution(std::ostream& out, OutputFormat format, const InstanceSummary& inst,
                        std::string_view engine, const PhaseDistribution& dist);

/// A per-part (or Grover) exact count distribution tagged with its part label ("0", "1", "grover").
struct LabelledCountDistribution {
    std::string part;
    CountDistribution dist;
};

void write_exact_count(std::ostream& out, OutputFormat format, const std::vector<LabelledCountDistribution>& parts,
                       const std::optional<JointCountDistribution>& joint);

/// One row of sampled counting output. theta_est is absent for the "total" row.
struct SampledCountRow {
    std::size_t trial = 0;
    std::uint64_t seed = 0;
    std::string part;
    std::optional<double> theta_est;
    double k_est = 0.0;
    long long k_rounded = 0;
    double bound = 0.0;
    std::size_t oracle_queries = 0;
};

void write_sampled_count(std::ostream& out, OutputFormat format, int p, std::uint64_t base_seed,
                         const std::vector<SampledCountRow>& rows);

void write_sweep(std::ostream& out, OutputFormat format, const std::vector<SweepRecord>& records);

void write_verify(std::ostream& out, OutputFormat format, const InstanceSummary& inst, int p,
                  const VerifyReport& report);

}  // namespace qwcount
