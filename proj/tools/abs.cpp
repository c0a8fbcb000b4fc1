// Command-line front end: solve, bench, verify.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "abslin/harness.hpp"

namespace {

const std::map<std::string, abslin::Algorithm> kAlgoNames = {
    {"ilu-a", abslin::Algorithm::IluA},
    {"ilu-pc", abslin::Algorithm::IluPivotCol},
    {"ilu-pr", abslin::Algorithm::IluPivotRow},
    {"general", abslin::Algorithm::General},
};

const std::map<std::string, abslin::Mode> kModeNames = {
    {"compact", abslin::Mode::Compact},
    {"explicit", abslin::Mode::Explicit},
};

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Implicit LU solvers for dense linear systems"};
    app.require_subcommand(1);

    // --- solve ---
    abslin::RunConfig cfg;
    std::string algo_name = "ilu-pc";
    std::string mode_name = "compact";
    auto* solve = app.add_subcommand("solve", "solve one linear system");
    solve->add_option("--algo", algo_name, "algorithm")
        ->check(CLI::IsMember({"ilu-a", "ilu-pc", "ilu-pr", "general"}));
    auto* opt_matrix = solve->add_option("--matrix", cfg.matrix_file, "matrix file (MatrixMarket array)");
    auto* opt_gen = solve->add_option("--gen", cfg.generator, "matrix generator")
                        ->check(CLI::IsMember({"mf", "mf2", "rankdef"}));
    opt_matrix->excludes(opt_gen);
    solve->add_option("--m", cfg.m, "generated rows");
    solve->add_option("--n", cfg.n, "generated cols");
    solve->add_option("--rank", cfg.rank, "target rank (rankdef generator)");
    solve->add_option("--rhs", cfg.rhs, "right-hand side: 'index' or a vector file");
    solve->add_option("--ep1", cfg.tol.ep1, "dependency control parameter");
    solve->add_option("--ep2", cfg.tol.ep2, "residual control parameter");
    solve->add_option("--mode", mode_name, "storage mode")
        ->check(CLI::IsMember({"compact", "explicit"}));
    solve->add_option("--seed", cfg.seed, "generator seed");
    solve->add_option("--out", cfg.out_dir, "output directory");

    // --- bench ---
    abslin::BenchConfig bcfg;
    std::string sizes_csv = "50,100,200";
    std::string algos_csv = "ilu-a,ilu-pc,ilu-pr";
    std::string gens_csv = "mf,mf2";
    std::string modes_csv = "compact";
    std::string bench_out;
    auto* bench = app.add_subcommand("bench", "benchmark grid of solves");
    bench->add_option("--sizes", sizes_csv, "comma-separated square sizes");
    bench->add_option("--algos", algos_csv, "comma-separated algorithms");
    bench->add_option("--gens", gens_csv, "comma-separated generators");
    bench->add_option("--modes", modes_csv, "comma-separated storage modes");
    bench->add_option("--seed", bcfg.seed, "generator seed");
    bench->add_option("--jobs", bcfg.jobs, "parallel benchmark cells");
    bench->add_option("--out", bench_out, "write records to this file (JSON lines)");

    // --- verify ---
    std::string suite = "all";
    std::uint64_t verify_seed = 1;
    auto* verify = app.add_subcommand("verify", "run self-check property suites");
    verify->add_option("--suite", suite, "structure | oracle | all")
        ->check(CLI::IsMember({"structure", "oracle", "all"}));
    verify->add_option("--seed", verify_seed, "suite seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;  // usage errors are exit 1; --help is 0
    }

    try {
        if (solve->parsed()) {
            if (cfg.matrix_file.empty() && cfg.generator.empty())
                throw abslin::ParamError("one of --matrix or --gen is required");
            for (const auto& [name, value] : kAlgoNames)
                if (name == algo_name) cfg.algo = value;
            cfg.mode = kModeNames.at(mode_name);
            const abslin::BenchRecord rec = abslin::run_solve(cfg, std::cerr);
            std::cout << abslin::to_json_line(rec) << "\n";
            if (rec.outcome == "success") return 0;
            return rec.outcome == "incompatible" ? 2 : 3;
        }

        if (bench->parsed()) {
            for (const std::string& s : split_csv(sizes_csv))
                bcfg.sizes.push_back(std::stoul(s));
            bcfg.algos.clear();
            for (const std::string& s : split_csv(algos_csv)) bcfg.algos.push_back(kAlgoNames.at(s));
            bcfg.generators = split_csv(gens_csv);
            bcfg.modes.clear();
            for (const std::string& s : split_csv(modes_csv)) bcfg.modes.push_back(kModeNames.at(s));
            const auto records = abslin::run_benchmark(bcfg, std::cerr);
            std::ofstream file;
            std::ostream* out = &std::cout;
            if (!bench_out.empty()) {
                file.open(bench_out);
                if (!file) throw abslin::ParamError("cannot open --out file");
                out = &file;
            }
            for (const auto& rec : records) *out << abslin::to_json_line(rec) << "\n";
            return 0;
        }

        if (verify->parsed())
            return abslin::run_verify(suite, verify_seed, std::cout) == 0 ? 0 : 4;
    } catch (const abslin::ParseError& e) {
        std::cerr << "parse error (line " << e.line << "): " << e.what() << "\n";
        return 1;
    } catch (const abslin::ParamError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const abslin::DimensionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::out_of_range&) {
        std::cerr << "error: unknown algorithm or mode name\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
