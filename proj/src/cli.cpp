// cli.cpp
#include "qdl/cli.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "qdl/charsums.hpp"
#include "qdl/errors.hpp"
#include "qdl/harper.hpp"
#include "qdl/lfunc.hpp"
#include "qdl/moments.hpp"
#include "qdl/parallel.hpp"
#include "qdl/rng.hpp"
#include "qdl/zeta.hpp"

namespace qdl::cli {

namespace {

// ------------------------------------------------------------- formatting

std::string fmt_f(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt_u(std::uint64_t v) {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%" PRIu64, v);
    return buf;
}

std::string join(const std::vector<double>& vs, char sep = ';') {
    std::string out;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (i) out.push_back(sep);
        out += fmt_f(vs[i]);
    }
    return out;
}

// in-memory report: metadata lines, header, string-formatted rows
struct Report {
    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

// tolerance bands frozen across the artifact; every report carries them
const std::pair<const char*, const char*> kBands[] = {
    {"band_lemma21_cos", "3"},
    {"band_lemma22_square_rel", "0.05"},
    {"band_lemma22_nonsquare_exponent", "0.75"},
    {"band_funceq_residual", "1e-08"},
    {"band_afe_vs_hurwitz_rel", "1e-06"},
    {"band_logl_margin", "5"},
    {"band_prop25_floor", "-5"},
    {"band_envelope_window", "10"},
    {"band_jutila_ladder_slack", "0.2"},
    {"band_harper_s0_fraction", "0.5"},
};

const char* command_name(const RunConfig& cfg) {
    switch (cfg.command) {
        case Command::sieve: return "sieve";
        case Command::zeta_check: return "zeta-check";
        case Command::lvalue: return "lvalue";
        case Command::jutila: return "jutila";
        case Command::moment: return "moment";
        case Command::report: return "report";
        case Command::verify:
            switch (cfg.verify_sub) {
                case VerifySub::lemma21: return "verify-lemma21";
                case VerifySub::lemma22: return "verify-lemma22";
                case VerifySub::prop25: return "verify-prop25";
                case VerifySub::envelope: return "verify-envelope";
                case VerifySub::harper_census: return "verify-harper-census";
                case VerifySub::funceq: return "verify-funceq";
            }
    }
    return "unknown";
}

// config echo: every value-relevant knob, no thread count or paths so
// bytes stay identical across machines and parallelism levels
void attach_meta(Report& r, const RunConfig& cfg) {
    r.meta.emplace_back("tool", kToolVersion);
    r.meta.emplace_back("command", command_name(cfg));
    r.meta.emplace_back("X", fmt_f(cfg.X));
    r.meta.emplace_back("Y", fmt_f(cfg.Y));
    r.meta.emplace_back("m", fmt_f(cfg.m));
    r.meta.emplace_back("shifts", join(cfg.shifts));
    r.meta.emplace_back("exponents", join(cfg.exponents));
    r.meta.emplace_back("eps", fmt_f(cfg.eps));
    r.meta.emplace_back("sigma", fmt_f(cfg.sigma));
    r.meta.emplace_back("seed", fmt_u(cfg.seed));
    r.meta.emplace_back("n", fmt_u(cfg.n_param));
    r.meta.emplace_back("d", fmt_u(cfg.d_param));
    r.meta.emplace_back("t", fmt_f(cfg.t_param));
    r.meta.emplace_back("M", fmt_u(cfg.harper_M));
    r.meta.emplace_back("B", fmt_f(cfg.harper_B));
    for (auto [k, v] : kBands) r.meta.emplace_back(k, v);
}

void write_csv(const Report& r, std::ostream& os) {
    for (const auto& [k, v] : r.meta) os << "# " << k << "=" << v << "\n";
    for (std::size_t i = 0; i < r.columns.size(); ++i) {
        if (i) os << ",";
        os << r.columns[i];
    }
    os << "\n";
    for (const auto& row : r.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) os << ",";
            os << row[i];
        }
        os << "\n";
    }
}

void write_json(const Report& r, std::ostream& os) {
    nlohmann::ordered_json j;
    for (const auto& [k, v] : r.meta) j["meta"][k] = v;
    j["columns"] = r.columns;
    j["rows"] = r.rows;
    os << j.dump(2) << "\n";
}

int write_report(const Report& r, const RunConfig& cfg) {
    std::string path = cfg.out_path;
    if (path.empty()) {
        path = std::string(command_name(cfg)) +
               (cfg.format == Format::csv ? ".csv" : ".json");
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) {
        std::cerr << "cannot open output file: " << path << "\n";
        return kInvalidConfig;
    }
    if (cfg.format == Format::csv) {
        write_csv(r, os);
    } else {
        write_json(r, os);
    }
    return kOk;
}

// ------------------------------------------------------------ subcommands

int run_sieve(const RunConfig& cfg) {
    auto ds = arith::sieve_squarefree_odd(static_cast<std::uint64_t>(cfg.X));
    Report r;
    attach_meta(r, cfg);
    r.columns = {"X", "count", "min_d", "max_d"};
    r.rows.push_back({fmt_f(cfg.X), fmt_u(ds.size()), fmt_u(ds.empty() ? 0 : ds.front()),
                      fmt_u(ds.empty() ? 0 : ds.back())});
    return write_report(r, cfg);
}

int run_zeta_check(const RunConfig& cfg) {
    zeta::ZetaEvaluator zv;
    Report r;
    attach_meta(r, cfg);
    r.columns = {"sigma", "t", "zeta_re", "zeta_im", "funceq_rel_residual"};
    constexpr double kPi = 3.14159265358979323846;
    for (double sg : {0.3, 0.5, 0.7}) {
        for (double t : {1.0, 5.0, 20.0}) {
            std::complex<double> s(sg, t);
            auto z = zv.riemann(s);
            auto rhs = std::pow(std::complex<double>(2.0, 0.0), s) *
                       std::pow(std::complex<double>(kPi, 0.0), s - 1.0) *
                       std::sin(kPi * s / 2.0) * zeta::lanczos_gamma(1.0 - s) *
                       zv.riemann(1.0 - s);
            double resid = std::abs(z - rhs) / std::abs(z);
            r.rows.push_back({fmt_f(sg), fmt_f(t), fmt_f(z.real()), fmt_f(z.imag()),
                              fmt_f(resid)});
        }
    }
    return write_report(r, cfg);
}

int run_lvalue(const RunConfig& cfg) {
    zeta::ZetaEvaluator zv;
    arith::QuadChar chi(cfg.d_param);
    auto lv = lfunc::l_value(chi, {cfg.sigma, cfg.t_param}, zv);
    Report r;
    attach_meta(r, cfg);
    r.columns = {"d", "sigma", "t", "re", "im", "abs", "method", "est_abs_error"};
    r.rows.push_back({fmt_u(cfg.d_param), fmt_f(cfg.sigma), fmt_f(cfg.t_param),
                      fmt_f(lv.value.real()), fmt_f(lv.value.imag()),
                      fmt_f(std::abs(lv.value)),
                      lv.method == lfunc::LMethod::hurwitz ? "hurwitz" : "afe",
                      fmt_f(lv.est_abs_error)});
    return write_report(r, cfg);
}

int run_jutila(const RunConfig& cfg) {
    double s = charsums::jutila_moment(cfg.X, cfg.Y, cfg.m, cfg.force, cfg.threads);
    double norm = cfg.X * std::pow(cfg.Y, cfg.m);
    Report r;
    attach_meta(r, cfg);
    r.columns = {"X", "Y", "m", "S_m", "S_m_over_XYm", "log_ratio"};
    r.rows.push_back({fmt_f(cfg.X), fmt_f(cfg.Y), fmt_f(cfg.m), fmt_f(s),
                      fmt_f(s / norm), fmt_f(std::log(s / norm))});
    return write_report(r, cfg);
}

lfunc::ShiftConfig shift_config_of(const RunConfig& cfg) {
    return lfunc::ShiftConfig(cfg.exponents, cfg.shifts, cfg.sigma);
}

int run_moment(const RunConfig& cfg) {
    zeta::ZetaEvaluator zv;
    auto mr = moments::shifted_moment_empirical(cfg.X, shift_config_of(cfg), zv, {},
                                                cfg.threads);
    Report r;
    attach_meta(r, cfg);
    r.columns = {"X", "k", "empirical", "envelope_thm11", "envelope_cor12",
                 "envelope_lemma26", "ratio", "family_size"};
    r.rows.push_back({fmt_f(mr.X), fmt_u(mr.cfg.k()), fmt_f(mr.empirical),
                      fmt_f(mr.envelope_thm11), fmt_f(mr.envelope_cor12),
                      fmt_f(mr.envelope_lemma26), fmt_f(mr.ratio),
                      fmt_u(mr.family_size)});
    return write_report(r, cfg);
}

int run_verify_lemma21(const RunConfig& cfg) {
    arith::PrimeTable table(10000000);
    Report r;
    attach_meta(r, cfg);
    r.columns = {"alpha", "x", "prime_sum_cos", "log_abs_zeta", "gap", "pass"};
    for (double alpha : {0.0, 0.5, 1.0, 2.0, 5.0, 10.0}) {
        for (double x : {1e3, 1e5, 1e7}) {
            double s = zeta::prime_sum_cos(x, alpha, table);
            double ref = zeta::log_abs_zeta_ref(x, alpha);
            double gap = std::abs(s - ref);
            r.rows.push_back({fmt_f(alpha), fmt_f(x), fmt_f(s), fmt_f(ref), fmt_f(gap),
                              gap <= 3.0 ? "1" : "0"});
        }
    }
    return write_report(r, cfg);
}

int run_verify_lemma22(const RunConfig& cfg) {
    auto phi = charsums::SmoothingFunction::bump_phi();
    arith::PrimeTable table(100000);
    double direct = charsums::smoothed_d_sum(cfg.n_param, cfg.X, phi, 0.0, cfg.threads);
    auto mt = charsums::main_term_d_sum(cfg.n_param, cfg.X, phi, 0.0, table);
    Report r;
    attach_meta(r, cfg);
    r.columns = {"n", "X", "direct", "main_term", "ratio", "delta_square", "tail_bound"};
    double main = mt.value();
    r.rows.push_back({fmt_u(cfg.n_param), fmt_f(cfg.X), fmt_f(direct), fmt_f(main),
                      fmt_f(main != 0.0 ? direct / main : std::nan("")),
                      fmt_u(static_cast<std::uint64_t>(mt.delta_square)),
                      fmt_f(mt.tail_bound)});
    return write_report(r, cfg);
}

int run_verify_prop25(const RunConfig& cfg) {
    zeta::ZetaEvaluator zv;
    arith::PrimeTable table(1000);
    lfunc::ShiftConfig scfg = shift_config_of(cfg);
    Report r;
    attach_meta(r, cfg);
    r.columns = {"sample", "d", "margin"};
    std::uint64_t counter = 0;
    std::uint64_t range = static_cast<std::uint64_t>(cfg.X);
    for (std::uint64_t i = 0; i < 200; ++i) {
        std::uint64_t d;
        do {
            d = 1 + splitmix64(cfg.seed, counter++) % range;
        } while (!arith::is_odd_squarefree(d));
        arith::QuadChar chi(d);
        double margin = lfunc::prop25_margin(chi, scfg, 1000.0, cfg.X, table, zv);
        r.rows.push_back({fmt_u(i), fmt_u(d), fmt_f(margin)});
    }
    return write_report(r, cfg);
}

int run_verify_envelope(const RunConfig& cfg) {
    zeta::ZetaEvaluator zv;
    std::vector<double> ts{0.0, 1.0, 2.0, 5.0};
    auto grid = moments::abs_l_grid(cfg.X, ts, zv, {}, cfg.threads);
    Report r;
    attach_meta(r, cfg);
    r.columns = {"t1", "t2", "empirical", "envelope_cor12", "envelope_thm11", "ratio"};
    for (double t1 : ts) {
        for (double t2 : ts) {
            lfunc::ShiftConfig pair_cfg({1.0, 1.0}, {t1, t2});
            auto mr = moments::moment_from_grid(grid, cfg.X, pair_cfg, zv, cfg.threads);
            r.rows.push_back({fmt_f(t1), fmt_f(t2), fmt_f(mr.empirical),
                              fmt_f(mr.envelope_cor12), fmt_f(mr.envelope_thm11),
                              fmt_f(mr.ratio)});
        }
    }
    return write_report(r, cfg);
}

int run_verify_harper_census(const RunConfig& cfg) {
    arith::PrimeTable table(100000);
    auto sched = harper::build_schedule(cfg.X, cfg.harper_M, cfg.harper_B);
    lfunc::ShiftConfig scfg = shift_config_of(cfg);
    auto rows = harper::census(scfg, sched, table, cfg.threads);
    Report r;
    attach_meta(r, cfg);
    r.meta.emplace_back("J", fmt_u(sched.J));
    r.meta.emplace_back("ell_1", fmt_u(sched.ells[1]));
    r.columns = {"class_j", "count", "fraction", "X", "M", "B", "sigma", "shifts"};
    for (const auto& row : rows) {
        r.rows.push_back({fmt_u(row.class_j), fmt_u(row.count), fmt_f(row.fraction),
                          fmt_f(cfg.X), fmt_u(cfg.harper_M), fmt_f(cfg.harper_B),
                          fmt_f(cfg.sigma), join(cfg.shifts)});
    }
    return write_report(r, cfg);
}

int run_verify_funceq(const RunConfig& cfg) {
    zeta::ZetaEvaluator zv;
    Report r;
    attach_meta(r, cfg);
    r.columns = {"d", "t", "residual", "pass"};
    for (std::uint64_t d : {1, 3, 5, 7, 11, 13, 15}) {
        arith::QuadChar chi(d);
        for (double t : {0.0, 1.0, 2.0, 5.0, 10.0}) {
            double resid = lfunc::functional_equation_residual(chi, {0.5, t}, zv);
            r.rows.push_back({fmt_u(d), fmt_f(t), fmt_f(resid),
                              resid <= 1e-8 ? "1" : "0"});
        }
    }
    return write_report(r, cfg);
}

int run_report(const RunConfig& cfg) {
    std::vector<std::string> present;
    for (const auto& path : cfg.report_inputs) {
        std::ifstream is(path);
        if (is) present.push_back(path);
    }
    if (present.empty()) {
        std::cerr << "report: no input files\n";
        return kEmptyReport;
    }
    Report r;
    attach_meta(r, cfg);
    r.columns = {"input", "rows", "columns"};
    for (const auto& path : present) {
        std::ifstream is(path);
        std::string line;
        std::size_t data_rows = 0;
        std::string header;
        while (std::getline(is, line)) {
            if (line.empty() || line[0] == '#') continue;
            if (header.empty()) {
                header = line;
                continue;
            }
            ++data_rows;
        }
        std::size_t ncols = header.empty() ? 0 : 1 + std::count(header.begin(), header.end(), ',');
        r.rows.push_back({path, fmt_u(data_rows), fmt_u(ncols)});
    }
    return write_report(r, cfg);
}

} // namespace

int run(const RunConfig& cfg) {
    try {
        switch (cfg.command) {
            case Command::sieve: return run_sieve(cfg);
            case Command::zeta_check: return run_zeta_check(cfg);
            case Command::lvalue: return run_lvalue(cfg);
            case Command::jutila: return run_jutila(cfg);
            case Command::moment: return run_moment(cfg);
            case Command::report: return run_report(cfg);
            case Command::verify:
                switch (cfg.verify_sub) {
                    case VerifySub::lemma21: return run_verify_lemma21(cfg);
                    case VerifySub::lemma22: return run_verify_lemma22(cfg);
                    case VerifySub::prop25: return run_verify_prop25(cfg);
                    case VerifySub::envelope: return run_verify_envelope(cfg);
                    case VerifySub::harper_census: return run_verify_harper_census(cfg);
                    case VerifySub::funceq: return run_verify_funceq(cfg);
                }
        }
        std::cerr << "unknown command\n";
        return kInvalidConfig;
    } catch (const budget_error& e) {
        std::cerr << "budget refusal: " << e.what() << "\n";
        return kBudgetRefusal;
    } catch (const numerical_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kNumericalFailure;
    } catch (const std::exception& e) {
        std::cerr << "invalid config: " << e.what() << "\n";
        return kInvalidConfig;
    }
}

int emit_plot_script(const std::string& report_path) {
    std::ifstream is(report_path);
    if (!is) {
        std::cerr << "emit_plot_script: cannot open " << report_path << "\n";
        return kInvalidConfig;
    }
    std::string line;
    std::vector<std::string> columns;
    std::vector<std::string> first_row;
    std::size_t line_no = 0;
    std::size_t header_cols = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string f;
        while (std::getline(ss, f, ',')) fields.push_back(f);
        if (columns.empty()) {
            columns = fields;
            header_cols = fields.size();
            continue;
        }
        if (fields.size() != header_cols) {
            std::cerr << "emit_plot_script: malformed row at line " << line_no << " of "
                      << report_path << " (" << fields.size() << " fields, expected "
                      << header_cols << ")\n";
            return kInvalidConfig;
        }
        if (first_row.empty()) first_row = fields;
    }
    if (columns.empty()) {
        std::cerr << "emit_plot_script: no header in " << report_path << "\n";
        return kInvalidConfig;
    }

    auto numeric = [](const std::string& s) {
        if (s.empty()) return false;
        char* end = nullptr;
        std::strtod(s.c_str(), &end);
        return end == s.c_str() + s.size();
    };

    std::string out_path = report_path + ".plot";
    std::ofstream os(out_path, std::ios::binary);
    os << "# column plot for " << report_path << "\n";
    os << "set datafile separator ','\n";
    os << "set datafile commentschars '#'\n";
    os << "set key outside\n";
    os << "set xlabel '" << columns[0] << "'\n";
    os << "plot ";
    bool first = true;
    for (std::size_t c = 1; c < columns.size(); ++c) {
        if (c < first_row.size() && !numeric(first_row[c])) continue;
        if (!first) os << ", \\\n     ";
        os << "'" << report_path << "' using 1:" << (c + 1) << " with linespoints title '"
           << columns[c] << "'";
        first = false;
    }
    os << "\n";
    return kOk;
}

} // namespace qdl::cli
