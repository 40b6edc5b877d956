#include "qwcount/cli.hpp"

#include "qwcount/output.hpp"
#include "qwcount/reduced_model.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <ostream>
#include <random>
#include <sstream>

namespace qwcount {

namespace {

std::vector<std::size_t> marks_for(std::size_t n, const std::optional<std::size_t>& k,
                                   const std::optional<std::vector<std::size_t>>& list, const char* part) {
    if (list) {
        std::vector<std::size_t> sorted = *list;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw UsageError(std::string("--marked") + part + " lists a vertex twice");
        if (k && *k != sorted.size())
            throw UsageError(std::string("--k") + part + " disagrees with the length of --marked" + part);
        for (auto v : sorted)
            if (v >= n)
                throw UsageError(std::string("--marked") + part + " vertex " + std::to_string(v) + " is not below n" +
                                 part + " = " + std::to_string(n));
        return sorted;
    }
    const std::size_t count = k.value_or(0);
    if (count > n)
        throw UsageError(std::string("k") + part + " = " + std::to_string(count) + " exceeds n" + part + " = " +
                         std::to_string(n));
    std::vector<std::size_t> out(count);
    for (std::size_t i = 0; i < count; ++i) out[i] = i;
    return out;
}

std::uint64_t fresh_seed() {
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ static_cast<std::uint64_t>(rd());
}

const std::map<std::string, OutputFormat> kFormats{{"csv", OutputFormat::csv}, {"json", OutputFormat::json}};
const std::map<std::string, Engine> kEngines{{"analytic", Engine::analytic}, {"circuit", Engine::circuit}};
const std::map<std::string, CountPart> kParts{
    {"0", CountPart::part0}, {"1", CountPart::part1}, {"both", CountPart::both}, {"grover", CountPart::grover}};
const std::map<std::string, CountMode> kModes{{"exact", CountMode::exact}, {"sampled", CountMode::sampled}};

void add_instance_options(CLI::App* sub, CliCommand& cmd) {
    sub->add_option("--n0", cmd.n0, "size of part 0")->check(CLI::PositiveNumber);
    sub->add_option("--n1", cmd.n1, "size of part 1")->check(CLI::PositiveNumber);
    sub->add_option("--k0", cmd.k0, "number of marked vertices in part 0 (marks 0..k0-1)");
    sub->add_option("--k1", cmd.k1, "number of marked vertices in part 1 (marks 0..k1-1)");
    sub->add_option("--marked0", cmd.marked0, "explicit marked vertices of part 0")->delimiter(',');
    sub->add_option("--marked1", cmd.marked1, "explicit marked vertices of part 1")->delimiter(',');
}

void add_output_options(CLI::App* sub, CliCommand& cmd) {
    sub->add_option("--format", cmd.format, "csv or json")->transform(CLI::CheckedTransformer(kFormats));
    sub->add_option("--output,-o", cmd.output_path, "output file (default: standard output)");
}

void require_instance(const CliCommand& cmd) {
    if (!cmd.n0) throw UsageError("missing required flag --n0");
    if (!cmd.n1) throw UsageError("missing required flag --n1");
}

void require_p(const CLI::App* sub) {
    if (sub->count("--p") == 0) throw UsageError("missing required flag --p");
}

std::string part_label(int part) { return part == 0 ? "0" : "1"; }

int run_spectrum(const CliCommand& cmd, std::ostream& out) {
    const auto inst = cmd.instance();
    const auto angles = angles_from_instance(inst);
    write_spectrum(out, cmd.format.value_or(OutputFormat::csv), summarize(inst), angles,
                   spectral_decomposition(angles), eigenphase_table(angles));
    return kExitOk;
}

int run_distribution(const CliCommand& cmd, std::ostream& out) {
    const auto inst = cmd.instance();
    PhaseDistribution dist = [&] {
        if (cmd.engine == Engine::analytic)
            return exact_distribution(eigenphase_table(angles_from_instance(inst)), cmd.p);
        const ComplexMatrix u = build_evolution(inst, build_oracle(inst));
        return circuit_distribution(u, uniform_state(inst), cmd.p);
    }();
    write_distribution(out, cmd.format.value_or(OutputFormat::csv), summarize(inst),
                       cmd.engine == Engine::analytic ? "analytic" : "circuit", dist);
    return kExitOk;
}

int run_count_exact(const CliCommand& cmd, std::ostream& out) {
    std::vector<LabelledCountDistribution> parts;
    std::optional<JointCountDistribution> joint;
    switch (cmd.part) {
        case CountPart::grover:
            parts.push_back({"grover", grover_count_distribution(cmd.p, cmd.grover_n, cmd.grover_k, cmd.engine)});
            break;
        case CountPart::part0:
        case CountPart::part1: {
            const int part = cmd.part == CountPart::part0 ? 0 : 1;
            parts.push_back({part_label(part), partial_count_distribution(cmd.p, cmd.instance(), part, cmd.engine)});
            break;
        }
        case CountPart::both:
            joint = full_count_distribution(cmd.p, cmd.instance(), cmd.engine);
            parts.push_back({"0", joint->part0});
            parts.push_back({"1", joint->part1});
            break;
    }
    write_exact_count(out, cmd.format.value_or(OutputFormat::csv), parts, joint);
    return kExitOk;
}

SampledCountRow row_from(std::size_t trial, std::uint64_t seed, std::string part, const CountEstimate& e) {
    return {trial, seed, std::move(part), e.theta_est, e.k_est, e.k_rounded, e.bound, e.oracle_queries};
}

int run_count_sampled(const CliCommand& cmd, std::ostream& out, std::ostream& err) {
    const std::uint64_t base = cmd.seed ? *cmd.seed : fresh_seed();
    if (!cmd.seed) err << "seed: " << base << '\n';

    std::optional<BipartiteInstance> inst;
    if (cmd.part != CountPart::grover) inst = cmd.instance();

    std::vector<SampledCountRow> rows;
    for (std::size_t t = 0; t < cmd.trials; ++t) {
        // Two seeds per trial: a two-part run draws part 1 from seed + 1.
        const std::uint64_t seed = base + 2 * static_cast<std::uint64_t>(t);
        switch (cmd.part) {
            case CountPart::grover:
                rows.push_back(row_from(t, seed, "grover",
                                        grover_count_sample(cmd.p, cmd.grover_n, cmd.grover_k, seed, cmd.engine)));
                break;
            case CountPart::part0:
            case CountPart::part1: {
                const int part = cmd.part == CountPart::part0 ? 0 : 1;
                rows.push_back(
                    row_from(t, seed, part_label(part), partial_count_sample(cmd.p, *inst, part, seed, cmd.engine)));
                break;
            }
            case CountPart::both: {
                const FullCountEstimate e = full_count_sample(cmd.p, *inst, seed, cmd.engine);
                rows.push_back(row_from(t, seed, "0", e.part0));
                rows.push_back(row_from(t, seed + 1, "1", e.part1));
                rows.push_back({t, seed, "total", std::nullopt, e.k_est, e.k_rounded, e.bound, e.oracle_queries});
                break;
            }
        }
    }
    write_sampled_count(out, cmd.format.value_or(OutputFormat::csv), cmd.p, base, rows);
    return kExitOk;
}

int run_sweep_command(const CliCommand& cmd, std::ostream& out, std::ostream& err) {
    SweepConfig cfg = load_sweep_config(cmd.config_path);
    if (cmd.format) cfg.format = *cmd.format;
    const SweepResult result = run_sweep(cfg, 0, &err);
    write_sweep(out, cfg.format, result.records);
    if (result.violations() > 0) {
        err << result.violations() << " of " << result.records.size() << " sweep points violate a bound\n";
        return kExitCheckFailed;
    }
    return kExitOk;
}

int run_verify(const CliCommand& cmd, std::ostream& out, std::ostream& err) {
    const auto inst = cmd.instance();
    VerifyOptions options;
    options.corrupt_arc = cmd.corrupt_arc;
    const VerifyReport report = verify_suite(inst, cmd.p, {}, options);
    write_verify(out, cmd.format.value_or(OutputFormat::csv), summarize(inst), cmd.p, report);
    if (!report.passed()) {
        for (const auto& c : report.checks)
            if (!c.passed)
                err << "FAILED " << c.name << ": " << format_double(c.value) << (c.at_least ? " < " : " > ")
                    << format_double(c.limit) << '\n';
        return kExitCheckFailed;
    }
    return kExitOk;
}

int dispatch(const CliCommand& cmd, std::ostream& out, std::ostream& err) {
    switch (cmd.kind) {
        case CommandKind::spectrum: return run_spectrum(cmd, out);
        case CommandKind::distribution: return run_distribution(cmd, out);
        case CommandKind::count:
            return cmd.mode == CountMode::exact ? run_count_exact(cmd, out) : run_count_sampled(cmd, out, err);
        case CommandKind::sweep: return run_sweep_command(cmd, out, err);
        case CommandKind::verify: return run_verify(cmd, out, err);
    }
    return kExitInvalid;
}

}  // namespace

BipartiteInstance CliCommand::instance() const {
    require_instance(*this);
    return BipartiteInstance(*n0, *n1, marks_for(*n0, k0, marked0, "0"), marks_for(*n1, k1, marked1, "1"));
}

CliCommand parse_args(std::span<const std::string> args) {
    CliCommand cmd;
    CLI::App app{"Exact quantum counting on complete bipartite graphs", "qwcount"};
    app.require_subcommand(1);

    auto* spectrum = app.add_subcommand("spectrum", "walk angles, eigenpairs and initial-state overlaps");
    add_instance_options(spectrum, cmd);
    add_output_options(spectrum, cmd);

    auto* distribution = app.add_subcommand("distribution", "exact phase-estimation outcome distribution");
    add_instance_options(distribution, cmd);
    add_output_options(distribution, cmd);
    distribution->add_option("--p", cmd.p, "phase register qubits");
    distribution->add_option("--engine", cmd.engine, "analytic or circuit")
        ->transform(CLI::CheckedTransformer(kEngines));

    auto* count = app.add_subcommand("count", "count marked vertices");
    add_instance_options(count, cmd);
    add_output_options(count, cmd);
    count->add_option("--p", cmd.p, "phase register qubits");
    count->add_option("--engine", cmd.engine, "analytic or circuit")->transform(CLI::CheckedTransformer(kEngines));
    count->add_option("--part", cmd.part, "0, 1, both or grover")->transform(CLI::CheckedTransformer(kParts));
    count->add_option("--mode", cmd.mode, "exact or sampled")->transform(CLI::CheckedTransformer(kModes));
    count->add_option("--trials", cmd.trials, "sampled runs")->check(CLI::PositiveNumber);
    count->add_option("--seed", cmd.seed, "base seed for sampled runs");
    count->add_option("--N", cmd.grover_n, "search space size for --part grover")->check(CLI::PositiveNumber);
    count->add_option("--k", cmd.grover_k, "marked elements for --part grover");

    auto* sweep = app.add_subcommand("sweep", "exhaustive bound check over a parameter grid");
    add_output_options(sweep, cmd);
    sweep->add_option("--config", cmd.config_path, "sweep config file")->required();

    auto* verify = app.add_subcommand("verify", "run every consistency check on one instance");
    add_instance_options(verify, cmd);
    add_output_options(verify, cmd);
    verify->add_option("--p", cmd.p, "phase register qubits");
    verify->add_option("--corrupt-arc", cmd.corrupt_arc, "flip the oracle sign on this arc");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested(app.help());
    } catch (const CLI::CallForAllHelp&) {
        throw HelpRequested(app.help("", CLI::AppFormatMode::All));
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    if (spectrum->parsed()) {
        cmd.kind = CommandKind::spectrum;
    } else if (distribution->parsed()) {
        cmd.kind = CommandKind::distribution;
        require_p(distribution);
    } else if (count->parsed()) {
        cmd.kind = CommandKind::count;
        require_p(count);
        if (cmd.part == CountPart::grover) {
            if (count->count("--N") == 0) throw UsageError("--part grover needs --N");
            if (cmd.grover_k > cmd.grover_n) throw UsageError("--k exceeds --N");
        }
        if (cmd.mode == CountMode::exact && (count->count("--trials") || count->count("--seed")))
            throw UsageError("--trials and --seed apply to --mode sampled");
    } else if (sweep->parsed()) {
        cmd.kind = CommandKind::sweep;
    } else {
        cmd.kind = CommandKind::verify;
        require_p(verify);
    }
    const bool needs_graph = cmd.kind != CommandKind::sweep && !(cmd.kind == CommandKind::count && cmd.part == CountPart::grover);
    if (needs_graph) (void)cmd.instance();
    return cmd;
}

int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    CliCommand cmd;
    try {
        cmd = parse_args(args);
    } catch (const HelpRequested& h) {
        out << h.what();
        return kExitOk;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\nrun with --help for usage\n";
        return kExitInvalid;
    }

    std::ostringstream buffer;
    int code = kExitOk;
    try {
        code = dispatch(cmd, buffer, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalid;
    }

    if (cmd.output_path.empty()) {
        out << buffer.str();
        out.flush();
        if (!out) {
            err << "error: failed writing standard output\n";
            return kExitInvalid;
        }
        return code;
    }
    std::ofstream file(cmd.output_path, std::ios::binary | std::ios::trunc);
    file << buffer.str();
    file.close();
    if (!file) {
        err << "error: cannot write " << cmd.output_path << '\n';
        return kExitInvalid;
    }
    return code;
}

}  // namespace qwcount
