#include "qwcount/output.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace qwcount {

std::string format_double(double x) {
    if (x == 0.0) x = 0.0;  // no "-0"
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// ---------------------------------------------------------------------------------------------

void JsonWriter::newline() {
    out_ << '\n';
    for (std::size_t i = 0; i < first_.size(); ++i) out_ << "  ";
}

void JsonWriter::before_value() {
    if (after_key_) {
        after_key_ = false;
        return;
    }
    if (first_.empty()) return;
    if (!first_.back()) out_ << ',';
    first_.back() = false;
    newline();
}

void JsonWriter::begin_object() {
    before_value();
    out_ << '{';
    first_.push_back(true);
}

void JsonWriter::end_object() {
    const bool empty = first_.back();
    first_.pop_back();
    if (!empty) newline();
    out_ << '}';
}

void JsonWriter::begin_array() {
    before_value();
    out_ << '[';
    first_.push_back(true);
}

void JsonWriter::end_array() {
    const bool empty = first_.back();
    first_.pop_back();
    if (!empty) newline();
    out_ << ']';
}

void JsonWriter::key(std::string_view name) {
    before_value();
    write_string(name);
    out_ << ": ";
    after_key_ = true;
}

void JsonWriter::value(double x) {
    before_value();
    if (std::isfinite(x))
        out_ << format_double(x);
    else
        out_ << "null";
}

void JsonWriter::value(long long x) {
    before_value();
    out_ << x;
}

void JsonWriter::value(unsigned long long x) {
    before_value();
    out_ << x;
}

void JsonWriter::value(bool b) {
    before_value();
    out_ << (b ? "true" : "false");
}

void JsonWriter::value(std::string_view s) {
    before_value();
    write_string(s);
}

void JsonWriter::write_string(std::string_view s) {
    out_ << '"';
    for (char c : s) {
        switch (c) {
            case '"': out_ << "\\\""; break;
            case '\\': out_ << "\\\\"; break;
            case '\n': out_ << "\\n"; break;
            case '\t': out_ << "\\t"; break;
            default: out_ << c;
        }
    }
    out_ << '"';
}

void JsonWriter::null() {
    before_value();
    out_ << "null";
}

void JsonWriter::finish() { out_ << '\n'; }

// ---------------------------------------------------------------------------------------------

InstanceSummary summarize(const BipartiteInstance& inst) {
    return {inst.n0(), inst.n1(), inst.marked_count(0), inst.marked_count(1)};
}

namespace {

const char* bool_text(bool b) { return b ? "true" : "false"; }

void instance_fields(JsonWriter& j, const InstanceSummary& inst) {
    j.field("n0", inst.n0);
    j.field("n1", inst.n1);
    j.field("k0", inst.k0);
    j.field("k1", inst.k1);
}

}  // namespace

void write_spectrum(std::ostream& out, OutputFormat format, const InstanceSummary& inst, const WalkAngles& angles,
                    const SpectralDecomposition& spectrum, const std::vector<PhaseWeight>& table) {
    if (format == OutputFormat::csv) {
        out << "n0,n1,k0,k1,theta0,theta1,mu,sigma,label,eigenvalue_re,eigenvalue_im,eigenphase,initial_overlap\n";
        for (const auto& pair : spectrum.pairs) {
            out << inst.n0 << ',' << inst.n1 << ',' << inst.k0 << ',' << inst.k1 << ',' << format_double(angles.theta0)
                << ',' << format_double(angles.theta1) << ',' << format_double(angles.mu) << ','
                << format_double(angles.sigma) << ',' << label_name(pair.label) << ','
                << format_double(pair.eigenvalue.real()) << ',' << format_double(pair.eigenvalue.imag()) << ','
                << format_double(pair.eigenphase) << ',' << format_double(pair.initial_overlap) << '\n';
        }
        return;
    }
    JsonWriter j(out);
    j.begin_object();
    instance_fields(j, inst);
    j.key("angles");
    j.begin_object();
    j.field("theta0", angles.theta0);
    j.field("theta1", angles.theta1);
    j.field("mu", angles.mu);
    j.field("sigma", angles.sigma);
    j.end_object();
    j.key("eigenpairs");
    j.begin_array();
    for (const auto& pair : spectrum.pairs) {
        j.begin_object();
        j.field("label", label_name(pair.label));
        j.field("eigenvalue_re", pair.eigenvalue.real());
        j.field("eigenvalue_im", pair.eigenvalue.imag());
        j.field("eigenphase", pair.eigenphase);
        j.field("initial_overlap", pair.initial_overlap);
        j.end_object();
    }
    j.end_array();
    j.key("phase_table");
    j.begin_array();
    for (const auto& row : table) {
        j.begin_object();
        j.field("phase", row.phase);
        j.field("probability", row.weight);
        j.end_object();
    }
    j.end_array();
    j.end_object();
    j.finish();
}

void write_distribution(std::ostream& out, OutputFormat format, const InstanceSummary& inst,
                        std::string_view engine, const PhaseDistribution& dist) {
    if (format == OutputFormat::csv) {
        out << "p,omega_index,omega_radians,mass\n";
        for (std::size_t m = 0; m < dist.grid_size(); ++m)
            out << dist.qubits() << ',' << m << ',' << format_double(dist.omega(m)) << ','
                << format_double(dist.mass(m)) << '\n';
        return;
    }
    JsonWriter j(out);
    j.begin_object();
    instance_fields(j, inst);
    j.field("p", dist.qubits());
    j.field("engine", engine);
    j.key("points");
    j.begin_array();
    for (std::size_t m = 0; m < dist.grid_size(); ++m) {
        j.begin_object();
        j.field("omega_index", m);
        j.field("omega_radians", dist.omega(m));
        j.field("mass", dist.mass(m));
        j.end_object();
    }
    j.end_array();
    j.end_object();
    j.finish();
}

void write_exact_count(std::ostream& out, OutputFormat format, const std::vector<LabelledCountDistribution>& parts,
                       const std::optional<JointCountDistribution>& joint) {
    if (format == OutputFormat::csv) {
        out << "part,p,omega_index,theta_est,k_est,mass\n";
        for (const auto& [label, dist] : parts)
            for (const auto& o : dist.outcomes)
                out << label << ',' << dist.p << ',' << o.omega_index << ',' << format_double(o.theta_est) << ','
                    << format_double(o.k_est) << ',' << format_double(o.mass) << '\n';
        return;
    }
    JsonWriter j(out);
    j.begin_object();
    j.field("mode", "exact");
    j.field("p", parts.empty() ? 0 : parts.front().dist.p);
    j.key("parts");
    j.begin_array();
    for (const auto& [label, dist] : parts) {
        j.begin_object();
        j.field("part", label);
        j.field("n_part", dist.n_target);
        j.field("k_true", dist.k_true);
        j.field("bound", dist.bound);
        j.field("oracle_queries", dist.oracle_queries);
        j.field("success_mass", dist.success_mass());
        j.key("outcomes");
        j.begin_array();
        for (const auto& o : dist.outcomes) {
            j.begin_object();
            j.field("omega_index", o.omega_index);
            j.field("theta_est", o.theta_est);
            j.field("k_est", o.k_est);
            j.field("mass", o.mass);
            j.end_object();
        }
        j.end_array();
        j.end_object();
    }
    j.end_array();
    if (joint) {
        j.key("total");
        j.begin_object();
        j.field("k_true", joint->k_true);
        j.field("bound", joint->bound);
        j.field("oracle_queries", joint->oracle_queries);
        j.field("success_mass", joint->success_mass());
        j.end_object();
    }
    j.end_object();
    j.finish();
}

void write_sampled_count(std::ostream& out, OutputFormat format, int p, std::uint64_t base_seed,
                         const std::vector<SampledCountRow>& rows) {
    if (format == OutputFormat::csv) {
        out << "trial,seed,part,theta_est,k_est,k_rounded,bound,oracle_queries\n";
        for (const auto& r : rows) {
            out << r.trial << ',' << r.seed << ',' << r.part << ','
                << (r.theta_est ? format_double(*r.theta_est) : std::string()) << ',' << format_double(r.k_est)
                << ',' << r.k_rounded << ',' << format_double(r.bound) << ',' << r.oracle_queries << '\n';
        }
        return;
    }
    JsonWriter j(out);
    j.begin_object();
    j.field("mode", "sampled");
    j.field("p", p);
    j.field("seed", static_cast<unsigned long long>(base_seed));
    j.key("rows");
    j.begin_array();
    for (const auto& r : rows) {
        j.begin_object();
        j.field("trial", r.trial);
        j.field("seed", static_cast<unsigned long long>(r.seed));
        j.field("part", r.part);
        j.key("theta_est");
        if (r.theta_est)
            j.value(*r.theta_est);
        else
            j.null();
        j.field("k_est", r.k_est);
        j.field("k_rounded", r.k_rounded);
        j.field("bound", r.bound);
        j.field("oracle_queries", r.oracle_queries);
        j.end_object();
    }
    j.end_array();
    j.end_object();
    j.finish();
}

void write_sweep(std::ostream& out, OutputFormat format, const std::vector<SweepRecord>& records) {
    if (format == OutputFormat::csv) {
        out << "n0,n1,k0,k1,p,theta0,theta1,mu,sigma,bound_part0,bound_part1,bound_total,"
               "thm2_mass_part0,thm2_mass_part1,thm3_mass,good_mass_part0,good_mass_part1,"
               "pass_part0,pass_part1,pass_joint\n";
        for (const auto& r : records) {
            out << r.n0 << ',' << r.n1 << ',' << r.k0 << ',' << r.k1 << ',' << r.p;
            for (double x : {r.theta0, r.theta1, r.mu, r.sigma, r.bound_part0, r.bound_part1, r.bound_total,
                             r.thm2_mass_part0, r.thm2_mass_part1, r.thm3_mass, r.good_mass_part0, r.good_mass_part1})
                out << ',' << format_double(x);
            out << ',' << bool_text(r.pass_part0) << ',' << bool_text(r.pass_part1) << ',' << bool_text(r.pass_joint)
                << '\n';
        }
        return;
    }
    JsonWriter j(out);
    j.begin_array();
    for (const auto& r : records) {
        j.begin_object();
        j.field("n0", r.n0);
        j.field("n1", r.n1);
        j.field("k0", r.k0);
        j.field("k1", r.k1);
        j.field("p", r.p);
        j.field("theta0", r.theta0);
        j.field("theta1", r.theta1);
        j.field("mu", r.mu);
        j.field("sigma", r.sigma);
        j.field("bound_part0", r.bound_part0);
        j.field("bound_part1", r.bound_part1);
        j.field("bound_total", r.bound_total);
        j.field("thm2_mass_part0", r.thm2_mass_part0);
        j.field("thm2_mass_part1", r.thm2_mass_part1);
        j.field("thm3_mass", r.thm3_mass);
        j.field("good_mass_part0", r.good_mass_part0);
        j.field("good_mass_part1", r.good_mass_part1);
        j.field("pass_part0", r.pass_part0);
        j.field("pass_part1", r.pass_part1);
        j.field("pass_joint", r.pass_joint);
        j.end_object();
    }
    j.end_array();
    j.finish();
}

void write_verify(std::ostream& out, OutputFormat format, const InstanceSummary& inst, int p,
                  const VerifyReport& report) {
    if (format == OutputFormat::csv) {
        out << "check,value,limit,relation,passed\n";
        for (const auto& c : report.checks)
            out << c.name << ',' << format_double(c.value) << ',' << format_double(c.limit) << ','
                << (c.at_least ? ">=" : "<=") << ',' << bool_text(c.passed) << '\n';
        return;
    }
    JsonWriter j(out);
    j.begin_object();
    instance_fields(j, inst);
    j.field("p", p);
    j.field("passed", report.passed());
    j.key("checks");
    j.begin_array();
    for (const auto& c : report.checks) {
        j.begin_object();
        j.field("name", c.name);
        j.field("value", c.value);
        j.field("limit", c.limit);
        j.field("relation", c.at_least ? ">=" : "<=");
        j.field("passed", c.passed);
        j.end_object();
    }
    j.end_array();
    j.end_object();
    j.finish();
}

}  // namespace qwcount
