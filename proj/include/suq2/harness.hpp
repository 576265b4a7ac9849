#pragma once

#include "suq2/qnum.hpp"
#include "suq2/report.hpp"

#include <filesystem>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace suq2 {

enum class Suite { Relations, Adjoint, Decompose, KqDecay, Asymptotics, Commutators, Minimality, Family };

std::string_view to_string(Suite s);
std::optional<Suite> parse_suite(std::string_view name);
std::vector<Suite> all_suites();

struct Tolerances {
    double relation = 1e-10; // operator-norm defect of each relation
    double adjoint = 1e-10;  // ||pi'(g)^* - pi'(g^*)||
    double norm = 1e-10;     // power-iteration relative tolerance
    double gram = 1e-8;      // Gram-Schmidt rank decisions
};

struct RunConfig {
    std::vector<double> qs{0.3, 0.5, 0.7};
    HalfInt n_max = HalfInt::from_int(8);
    Tolerances tol;
    std::set<Suite> suites;
    std::filesystem::path out_dir;   // empty: no files written
    bool emit_plot_data = false;
    unsigned threads = 0;            // 0: hardware concurrency
};

/// Invalid configuration; the message names the offending field.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// I/O failure with the path involved.
class EmitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

void validate(const RunConfig& config);

/// Decay data behind one kq-decay cell, kept for plot emission.
struct PlotSeries {
    std::string file_name; // kq_<gen>_q<value>.dat
    std::vector<std::pair<double, double>> points; // (n, ln block norm)
};

struct RunResult {
    std::vector<VerificationReport> reports; // sorted by (suite, cell key)
    std::vector<PlotSeries> plots;
    double total_ms = 0.0;

    bool all_pass() const;
};

/// Executes the selected suites over the q grid. Deterministic for a fixed config.
RunResult run(const RunConfig& config);

/// Stable text form of a q value, as used in cell keys and file names.
std::string format_q(double q);

/// The metric payload as canonical JSON text (no timing, no environment).
std::string payload_json(const std::vector<VerificationReport>& reports);
/// 64-bit FNV-1a of payload_json, as 16 hex digits.
std::string payload_hash(const std::vector<VerificationReport>& reports);

std::string report_json(const RunConfig& config, const RunResult& result);
std::string report_csv(const std::vector<VerificationReport>& reports);

/// Writes report.json, report.csv and, if enabled, the plot files into
/// config.out_dir. Returns the paths written.
std::vector<std::filesystem::path> emit(const RunConfig& config, const RunResult& result);

} // namespace suq2
