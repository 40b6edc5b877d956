#pragma once

// Command-line front end: spectrum, distribution, count, sweep and verify.

#include "qwcount/analysis.hpp"
#include "qwcount/counting.hpp"
#include "qwcount/walk_space.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qwcount {

/// Bad command line; exit code 1 with a usage hint.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// --help was given; `what()` holds the help text.
class HelpRequested : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class CommandKind { spectrum, distribution, count, sweep, verify };
enum class CountPart { part0, part1, both, grover };
enum class CountMode { exact, sampled };

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitCheckFailed = 2;

struct CliCommand {
    CommandKind kind = CommandKind::spectrum;

    std::optional<std::size_t> n0, n1;
    std::optional<std::size_t> k0, k1;
    std::optional<std::vector<std::size_t>> marked0, marked1;

    int p = 0;
    Engine engine = Engine::analytic;
    CountPart part = CountPart::both;
    CountMode mode = CountMode::exact;
    std::size_t trials = 1;
    std::optional<std::uint64_t> seed;
    std::size_t grover_n = 0, grover_k = 0;

    std::string config_path;
    std::optional<std::size_t> corrupt_arc;

    std::optional<OutputFormat> format;  ///< nullopt: csv, or the sweep config's choice
    std::string output_path;            ///< empty: standard output

    /// The graph named by --n0/--n1 and --k*/--marked*. Counts give marks {0..k-1}; when
    /// both a count and a list are given they must agree.
    BipartiteInstance instance() const;
};

/// `args` excludes the program name. Throws UsageError or HelpRequested.
CliCommand parse_args(std::span<const std::string> args);

/// Parses, runs and emits; returns the process exit code. Diagnostics go to `err`.
int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace qwcount
