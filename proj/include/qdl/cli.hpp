// cli.hpp
// Experiment runner behind the command-line tool: validated run configs,
// deterministic report files (CSV primary, JSON mirror), and plot-script
// emission. Report bytes depend only on (config, seed), never on the
// thread count.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qdl::cli {

inline constexpr const char* kToolVersion = "qdl 0.1.0";

// process exit codes
inline constexpr int kOk = 0;
inline constexpr int kInvalidConfig = 2;
inline constexpr int kBudgetRefusal = 3;
inline constexpr int kNumericalFailure = 4;
inline constexpr int kEmptyReport = 5;

enum class Command { sieve, zeta_check, lvalue, jutila, moment, verify, report };
enum class VerifySub { lemma21, lemma22, prop25, envelope, harper_census, funceq };
enum class Format { csv, json };

struct RunConfig {
    Command command = Command::sieve;
    VerifySub verify_sub = VerifySub::lemma21;

    double X = 1e4;
    double Y = 64.0;
    double m = 1.0;
    std::vector<double> shifts{0.0};
    std::vector<double> exponents{1.0};
    double eps = 0.01;
    double sigma = 0.5;
    unsigned threads = 0;  // 0: QDL_THREADS or hardware
    std::string out_path;  // empty: "<command>.csv" / ".json"
    Format format = Format::csv;
    std::uint64_t seed = 1;
    bool force = false;

    // command-specific knobs
    std::uint64_t d_param = 1;   // lvalue: discriminant index d
    double t_param = 0.0;        // lvalue: shift t
    std::uint64_t n_param = 1;   // verify lemma22: the n of the d-sum
    unsigned harper_M = 1;       // verify harper-census
    double harper_B = 0.0;
    std::vector<std::string> report_inputs;  // report: input files
};

// Execute one run; writes the report file on success and returns an exit
// code (errors are reported on stderr, never thrown).
int run(const RunConfig& cfg);

// Write "<report_path>.plot" with generic column-plot commands for an
// existing CSV report. Never executes anything. Returns an exit code;
// parse failures name the offending line.
int emit_plot_script(const std::string& report_path);

} // namespace qdl::cli
