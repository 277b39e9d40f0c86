#include "adft/report.hpp"
#include "adft/tables.hpp"
#include "adft/threshold.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace adft;

namespace {

std::vector<double> parse_list(const std::string& s, std::size_t n, const char* what) {
    std::vector<double> v;
    std::stringstream ss(s);
    for (std::string tok; std::getline(ss, tok, ',');) {
        try {
            std::size_t used = 0;
            v.push_back(std::stod(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw CLI::ValidationError(what, "not a number: " + tok);
        }
    }
    if (v.size() != n) throw CLI::ValidationError(what, "expected " + std::to_string(n) + " comma-separated values");
    return v;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << text;
}

int run_tables(bool quiet) {
    int bad = 0;
    for (auto& c : all_table_checks()) {
        if (!quiet || !c.pass)
            std::cout << (c.pass ? "PASS " : "FAIL ") << c.table << " | " << c.row << " | expected " << c.expected
                      << " | observed " << c.observed << "\n";
        bad += !c.pass;
    }
    std::cout << "tables: " << (bad ? "FAIL" : "PASS") << " (" << bad << " rows differ)\n";
    return bad;
}

int run_verify() {
    int bad = run_tables(true);
    std::printf("%-12s %8s %10s %14s  %s\n", "suite", "paths", "malignant", "max_residual", "result");
    for (auto& s : all_suites()) {
        const bool ok = s.malignant == 0 && s.max_residual < malignancy_tol;
        std::printf("%-12s %8ld %10ld %14.6e  %s\n", s.name.c_str(), s.paths, s.malignant, s.max_residual,
                    ok ? "PASS" : "FAIL");
        for (std::size_t i = 0; i < s.failures.size() && i < 5; ++i) std::printf("    %s\n", s.failures[i].c_str());
        if (s.failures.size() > 5) std::printf("    ... %zu more\n", s.failures.size() - 5);
        bad += !ok;
    }
    if (bad) std::cerr << "verify: " << bad << " check(s) failed\n";
    return bad ? 1 : 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fault-tolerance analysis for the 4-qubit amplitude-damping code"};
    app.require_subcommand(1);

    auto* verify = app.add_subcommand("verify", "single-fault suites and syndrome tables");
    auto* tables = app.add_subcommand("tables", "reproduce the syndrome tables by fault injection");

    auto* count = app.add_subcommand("count", "malignant-pair count of an extended gadget");
    std::string gadget = "memory", out_path;
    bool include_leading = false;
    count->add_option("--gadget", gadget, "memory or cz")->check(CLI::IsMember({"memory", "cz"}));
    count->add_flag("--include-leading", include_leading, "count pairs inside leading EC gadgets");
    count->add_option("--out", out_path, "report file (stdout when absent)");

    auto* bound = app.add_subcommand("bound", "lower bound on the pseudothreshold");
    double C = 0, B = 0;
    std::string state;
    long haar = 0, uniform = 0;
    std::optional<std::uint64_t> seed;
    bound->add_option("--C", C, "malignant pair count")->required();
    bound->add_option("--B", B, "third-order count")->required();
    auto* st_opt = bound->add_option("--state", state, "theta,phi");
    auto* haar_opt = bound->add_option("--haar", haar, "Haar average over N states");
    bound->add_option("--uniform-theta", uniform, "average over N polar angles, uniform in theta");
    bound->add_option("--seed", seed, "RNG seed (required with --haar)");
    st_opt->excludes(haar_opt);

    auto* simulate = app.add_subcommand("simulate", "memory Monte Carlo pseudothreshold histogram");
    long n_states = 1000;
    std::string grid = "1e-6,1e-2,30", prefix = "adft", crossing;
    int bins = 40;
    std::uint64_t sim_seed = 0;
    simulate->add_option("--states", n_states, "number of Haar states");
    simulate->add_option("--grid", grid, "lo,hi,n log grid in p");
    simulate->add_option("--seed", sim_seed, "RNG seed")->required();
    simulate->add_option("--bins", bins, "histogram bins");
    simulate->add_option("--out", prefix, "output prefix: <out>_states.csv, <out>_hist.csv");
    simulate->add_option("--crossing", crossing, "theta,phi: also write <out>_crossing.csv");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*verify) return run_verify();
        if (*tables) return run_tables(false) ? 1 : 0;

        if (*count) {
            const auto k = gadget == "memory" ? extended_kind::memory : extended_kind::cz;
            const std::string text = report_text(count_report(k, include_leading), k);
            if (out_path.empty())
                std::cout << text;
            else
                write_file(out_path, text);
            return 0;
        }

        if (*bound) {
            if (!(C > 0) || !(B > 0)) throw std::invalid_argument("--C and --B must be positive");
            if (!state.empty()) {
                auto v = parse_list(state, 2, "--state");
                std::cout << fmt(solve_bound({C, B, {v[0], v[1]}})) << "\n";
            } else if (haar > 0) {
                if (!seed) throw std::invalid_argument("--haar needs --seed");
                long skipped = 0;
                auto r = haar_bound(C, B, haar, *seed, &skipped);
                std::cout << "mean " << fmt(r.mean) << " stderr " << fmt(r.stderr_) << " n " << r.n << " skipped "
                          << skipped << "\n";
            } else if (uniform > 0) {
                std::cout << fmt(uniform_theta_bound(C, B, int(uniform))) << "\n";
            } else {
                throw std::invalid_argument("give --state, --haar or --uniform-theta");
            }
            return 0;
        }

        if (*simulate) {
            auto g = parse_list(grid, 3, "--grid");
            if (g[2] < 2 || g[2] != double(long(g[2]))) throw std::invalid_argument("--grid: n must be an integer >= 2");
            const auto pts = log_grid(g[0], g[1], int(g[2]));
            const auto table = memory_processes(pts);
            const auto h = threshold_histogram(n_states, table, sim_seed, bins);
            write_file(prefix + "_states.csv", samples_csv(h, sim_seed, pts));
            write_file(prefix + "_hist.csv", histogram_csv(h, sim_seed, pts));
            if (!crossing.empty()) {
                auto v = parse_list(crossing, 2, "--crossing");
                write_file(prefix + "_crossing.csv", crossing_csv({v[0], v[1]}, table));
            }
            std::cout << "mean " << fmt(h.mean) << " median " << fmt(h.median) << " states " << h.n_samples
                      << " degenerate " << h.n_degenerate << " out_of_range " << h.n_out_of_range << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "adft: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
