// qdl.cpp
// Command-line workbench for the quadratic Dirichlet L-function laboratory.
//
//   qdl sieve --X 1e6
//   qdl jutila --X 4096 --Y 64 --m 1
//   qdl moment --X 1e4 --shifts 0,1 --exponents 1,1
//   qdl verify lemma22 --n 9 --X 100000
//   qdl report --in runs/a.csv runs/b.csv
//   qdl plot jutila.csv
//
// Exit codes: 0 ok, 2 invalid config, 3 budget refusal, 4 numerical
// failure, 5 empty report.
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qdl/cli.hpp"

using qdl::cli::Command;
using qdl::cli::Format;
using qdl::cli::RunConfig;
using qdl::cli::VerifySub;

namespace {

std::vector<double> parse_list(const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    return out;
}

// key=value config; a key applies only when the matching flag was not
// given on the command line
bool apply_config_file(CLI::App* sub, RunConfig& cfg, std::string& format_str,
                       const std::string& path) {
    std::ifstream is(path);
    if (!is) {
        std::cerr << "cannot open config file: " << path << "\n";
        return false;
    }
    auto unset = [&](const std::string& flag) {
        auto* opt = sub->get_option_no_throw(flag);
        return opt == nullptr || opt->count() == 0;
    };
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            s.erase(0, s.find_first_not_of(" \t"));
            auto end = s.find_last_not_of(" \t\r");
            s.erase(end == std::string::npos ? 0 : end + 1);
            return s;
        };
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty()) continue;
        try {
            if (key == "X" && unset("--X")) cfg.X = std::stod(val);
            else if (key == "Y" && unset("--Y")) cfg.Y = std::stod(val);
            else if (key == "m" && unset("--m")) cfg.m = std::stod(val);
            else if (key == "eps" && unset("--eps")) cfg.eps = std::stod(val);
            else if (key == "sigma" && unset("--sigma")) cfg.sigma = std::stod(val);
            else if (key == "seed" && unset("--seed")) cfg.seed = std::stoull(val);
            else if (key == "threads" && unset("--threads"))
                cfg.threads = static_cast<unsigned>(std::stoul(val));
            else if (key == "n" && unset("--n")) cfg.n_param = std::stoull(val);
            else if (key == "d" && unset("--d")) cfg.d_param = std::stoull(val);
            else if (key == "t" && unset("--t")) cfg.t_param = std::stod(val);
            else if (key == "M" && unset("--M"))
                cfg.harper_M = static_cast<unsigned>(std::stoul(val));
            else if (key == "B" && unset("--B")) cfg.harper_B = std::stod(val);
            else if (key == "shifts" && unset("--shifts")) cfg.shifts = parse_list(val);
            else if (key == "exponents" && unset("--exponents"))
                cfg.exponents = parse_list(val);
            else if (key == "out" && unset("--out")) cfg.out_path = val;
            else if (key == "format" && unset("--format")) format_str = val;
            else if (key == "force" && unset("--force")) cfg.force = val != "0";
        } catch (const std::exception&) {
            std::cerr << "bad value in config file " << path << " line " << line_no
                      << ": " << key << "=" << val << "\n";
            return false;
        }
    }
    return true;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical workbench for quadratic Dirichlet L-functions"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string format_str = "csv";
    std::string config_path;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "key=value config file; flags override");
        sub->add_option("--X", cfg.X, "family / range parameter X");
        sub->add_option("--Y", cfg.Y, "inner-sum length Y");
        sub->add_option("--m", cfg.m, "moment exponent m");
        sub->add_option("--shifts", cfg.shifts, "shift tuple t_1..t_k")->delimiter(',');
        sub->add_option("--exponents", cfg.exponents, "exponent tuple a_1..a_k")
            ->delimiter(',');
        sub->add_option("--eps", cfg.eps, "epsilon for exponent formulas");
        sub->add_option("--sigma", cfg.sigma, "real part sigma >= 1/2");
        sub->add_option("--threads", cfg.threads,
                        "worker threads (0: QDL_THREADS or hardware)");
        sub->add_option("--out", cfg.out_path, "output report path");
        sub->add_option("--format", format_str, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--seed", cfg.seed, "sampling seed");
        sub->add_flag("--force", cfg.force, "override the operation budget");
    };

    CLI::App* sieve = app.add_subcommand("sieve", "enumerate odd square-free d <= X");
    add_common(sieve);

    CLI::App* zeta_check = app.add_subcommand("zeta-check", "zeta functional-equation grid");
    add_common(zeta_check);

    CLI::App* lvalue = app.add_subcommand("lvalue", "one L(sigma+it, chi^(8d)) value");
    add_common(lvalue);
    lvalue->add_option("--d", cfg.d_param, "odd square-free d")->required();
    lvalue->add_option("--t", cfg.t_param, "imaginary shift t");

    CLI::App* jutila = app.add_subcommand("jutila", "character-sum moment S_m(X,Y)");
    add_common(jutila);

    CLI::App* moment = app.add_subcommand("moment", "shifted moment over the family");
    add_common(moment);

    CLI::App* verify = app.add_subcommand("verify", "named verification runs");
    verify->require_subcommand(1);
    std::map<std::string, VerifySub> subs{
        {"lemma21", VerifySub::lemma21},       {"lemma22", VerifySub::lemma22},
        {"prop25", VerifySub::prop25},         {"envelope", VerifySub::envelope},
        {"harper-census", VerifySub::harper_census}, {"funceq", VerifySub::funceq}};
    for (auto& [name, sub] : subs) {
        CLI::App* v = verify->add_subcommand(name);
        add_common(v);
        if (sub == VerifySub::lemma22) {
            v->add_option("--n", cfg.n_param, "the n of the smoothed d-sum");
        }
        if (sub == VerifySub::harper_census) {
            v->add_option("--M", cfg.harper_M, "schedule constant M");
            v->add_option("--B", cfg.harper_B, "schedule constant B");
        }
        v->callback([&cfg, sub_val = sub] { cfg.verify_sub = sub_val; });
    }

    CLI::App* report = app.add_subcommand("report", "summarize existing report files");
    add_common(report);
    report->add_option("--in", cfg.report_inputs, "input CSV reports");

    CLI::App* plot = app.add_subcommand("plot", "emit a plot script for a report");
    std::string plot_target;
    plot->add_option("file", plot_target, "report CSV")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : qdl::cli::kInvalidConfig;
    }

    if (!config_path.empty()) {
        CLI::App* active = app.get_subcommands().empty() ? &app : app.get_subcommands()[0];
        if (active->get_name() == "verify" && !active->get_subcommands().empty()) {
            active = active->get_subcommands()[0];
        }
        if (!apply_config_file(active, cfg, format_str, config_path)) {
            return qdl::cli::kInvalidConfig;
        }
    }
    cfg.format = format_str == "json" ? Format::json : Format::csv;

    if (sieve->parsed()) cfg.command = Command::sieve;
    if (zeta_check->parsed()) cfg.command = Command::zeta_check;
    if (lvalue->parsed()) cfg.command = Command::lvalue;
    if (jutila->parsed()) cfg.command = Command::jutila;
    if (moment->parsed()) cfg.command = Command::moment;
    if (verify->parsed()) cfg.command = Command::verify;
    if (report->parsed()) cfg.command = Command::report;
    if (plot->parsed()) return qdl::cli::emit_plot_script(plot_target);

    return qdl::cli::run(cfg);
}
