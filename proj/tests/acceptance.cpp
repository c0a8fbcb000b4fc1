// Acceptance suite: end-to-end checks of the solver contracts, printed one
// line per criterion. Exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include <json.hpp>

#include "abslin/generators.hpp"
#include "abslin/harness.hpp"
#include "abslin/ilu.hpp"
#include "abslin/mmio.hpp"
#include "abslin/oracle.hpp"

using namespace abslin;

namespace {

int g_failures = 0;

void report(int number, const std::string& name, bool passed, const std::string& detail) {
    std::cout << (passed ? "PASS" : "FAIL") << "  " << number << ". " << name << ": " << detail
              << "\n";
    if (!passed) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

DenseMatrix filtered_random_square(std::size_t n, std::mt19937_64& rng) {
    while (true) {
        DenseMatrix a = random_matrix(n, n, rng);
        const oracle::GaussResult probe = oracle::gauss_solve(a, DenseVector(n, 1.0));
        if (probe.status == oracle::GaussStatus::Solved && probe.pivot_ratio < 1e8) return a;
    }
}

// 1. Agreement with the independent oracle on 200 seeded random square
//    systems, sizes 2..40, entries uniform in [-1, 1], conditioning filtered.
void criterion_oracle_equivalence() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(20240001);
    double worst = 0.0;
    int regular = 0;
    bool ok = true;
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = 2 + static_cast<std::size_t>(rng() % 39);
        const DenseMatrix a = filtered_random_square(n, rng);
        const DenseVector b = random_vector(n, rng);
        const oracle::GaussResult ref = oracle::gauss_solve(a, b);
        if (ref.status != oracle::GaussStatus::Solved) {
            ok = false;
            break;
        }
        const double scale = norm_inf(ref.x);
        auto gap = [&](const SolveReport& rep) {
            double g = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                g = std::max(g, std::fabs(rep.solution[i] - ref.x[i]));
            return g / scale;
        };
        const SolveReport pc = ilu_pivot_col(a, b);
        const SolveReport pr = ilu_pivot_row(a, b);
        if (!pc.success() || !pr.success()) {
            ok = false;
            break;
        }
        worst = std::max(worst, std::max(gap(pc), gap(pr)));
        const SolveReport ra = ilu_a(a, b);
        if (ra.success()) {
            worst = std::max(worst, gap(ra));
            ++regular;
        }
    }
    const double secs = seconds_since(t0);
    ok = ok && worst <= 1e-7 && secs < 10.0;
    std::ostringstream detail;
    detail << "200 systems, max rel gap " << worst << ", " << regular
           << " regular for the unpivoted variant, " << secs << " s";
    report(1, "oracle equivalence", ok, detail.str());
}

// 2. Distance-matrix experiment: column pivoting at n = 100, 500, 1000 with
//    b_k = k; relative residual at most 1e-8, the largest size within 60 s.
void criterion_distance_experiment() {
    bool ok = true;
    std::ostringstream detail;
    double secs_1000 = 0.0;
    for (std::size_t n : {100ul, 500ul, 1000ul}) {
        const DenseMatrix a = gen_micchelli_fiedler(n, n);
        const DenseVector b = index_rhs(n);
        const auto t0 = std::chrono::steady_clock::now();
        const SolveReport rep = ilu_pivot_col(a, b);
        const double secs = seconds_since(t0);
        if (n == 1000) secs_1000 = secs;
        if (!rep.success()) {
            ok = false;
            detail << "n=" << n << " failed; ";
            continue;
        }
        const double rel = oracle::residual_norm(a, rep.solution, b) / norm2(b);
        ok = ok && rel <= 1e-8;
        detail << "n=" << n << " rel residual " << rel << " (" << secs << " s); ";
    }
    ok = ok && secs_1000 < 60.0;
    report(2, "distance-matrix experiment", ok, detail.str());
}

// 3. Regularity failure: the unpivoted variant stops on the zero leading
//    entry of the 3x3 distance matrix; both pivoted variants solve it and
//    match the oracle anchor x = (1.5, 0, 0.5).
void criterion_regularity_failure() {
    const DenseMatrix a = gen_micchelli_fiedler(3, 3);
    const DenseVector b = index_rhs(3);
    const SolveReport plain = ilu_a(a, b);
    bool ok = plain.outcome == Outcome::SingularPrincipalMinor && plain.failing_row == 0;

    const DenseVector anchor = oracle::gauss_solve(a, b).x;
    double worst = 0.0;
    for (const SolveReport& rep : {ilu_pivot_col(a, b), ilu_pivot_row(a, b)}) {
        if (!rep.success()) {
            ok = false;
            continue;
        }
        for (std::size_t i = 0; i < 3; ++i)
            worst = std::max(worst, std::fabs(rep.solution[i] - anchor[i]));
    }
    ok = ok && worst <= 1e-12 && std::fabs(anchor[0] - 1.5) <= 1e-14 &&
         std::fabs(anchor[1]) <= 1e-14 && std::fabs(anchor[2] - 0.5) <= 1e-14;
    std::ostringstream detail;
    detail << "unpivoted stops at row 1, pivoted max gap " << worst;
    report(3, "regularity failure and pivoted recovery", ok, detail.str());
}

// 4. Rank and dependency handling on a 50x80 system of rank 30, then an
//    incompatible perturbation of one dependent equation.
void criterion_rank_handling() {
    const std::uint64_t seed = 77;
    const GeneratedSystem g = gen_rank_deficient(50, 80, 30, seed);
    const double lim = 1e-8 * (1.0 + norm2(g.b));
    bool ok = true;
    std::ostringstream detail;

    for (int variant = 0; variant < 2; ++variant) {
        const SolveReport rep =
            variant == 0 ? ilu_pivot_col(g.a, g.b) : ilu_pivot_row(g.a, g.b);
        int dependents = 0;
        for (RowStatus st : rep.row_status) dependents += st == RowStatus::Dependent;
        const double res = rep.success() ? oracle::residual_norm(g.a, rep.solution, g.b) : 1e9;
        if (!(rep.success() && rep.rank == 30 && dependents == 20 && res <= lim)) ok = false;
        detail << (variant == 0 ? "pc" : "pr") << ": rank " << rep.rank << ", " << dependents
               << " dependent, residual " << res << "; ";

        // Perturb the right-hand side of an equation this variant skipped as
        // dependent; row pivoting reorders equations, so map the processing
        // slot back to the original index.
        std::size_t perturb_row = 0;
        for (std::size_t r = 0; r < rep.row_status.size(); ++r)
            if (rep.row_status[r] == RowStatus::Dependent) {
                perturb_row = variant == 0 ? r : rep.permutation[r];
                break;
            }
        DenseVector bad = g.b;
        bad[perturb_row] += 1.0;
        const SolveReport broken =
            variant == 0 ? ilu_pivot_col(g.a, bad) : ilu_pivot_row(g.a, bad);
        if (!(broken.outcome == Outcome::Incompatible && broken.failing_row == perturb_row &&
              exit_code(broken.outcome) == 2))
            ok = false;
        detail << "perturbed row " << perturb_row << " flagged incompatible; ";
    }
    detail << "exit code 2";
    report(4, "rank and dependency handling", ok, detail.str());
}

// 5. Structural invariants on 100 seeded random 20x30 full-rank systems in
//    explicit mode: exact block structure each iteration, factorization and
//    null-space containments at 1e-10, unit upper triangular search vectors.
void criterion_structural_invariants() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(20240005);
    bool ok = true;
    double worst = 0.0;
    for (int t = 0; t < 100 && ok; ++t) {
        const DenseMatrix a = random_matrix(20, 30, rng);
        const DenseVector b = random_vector(20, rng);
        SolveOptions opts;
        opts.mode = Mode::Explicit;
        opts.trace = TraceLevel::Full;
        const SolveReport rep = ilu_pivot_col(a, b, opts);
        if (!rep.success() || rep.rank != 20) {
            ok = false;
            break;
        }
        const DenseMatrix aw = permuted_cols(a, rep.permutation);
        const AbsTrace& trace = *rep.trace;

        std::size_t snap = 0;
        for (const TraceStep& st : trace.steps) {
            if (st.status != RowStatus::Solved) continue;
            const DenseMatrix& h = trace.h_snapshots[snap++];
            const auto structure = oracle::check_abaffian_structure(h, st.row + 1);
            DenseMatrix processed(st.row + 1, 30);
            DenseMatrix used_w(30, st.row + 1, 0.0);
            for (std::size_t k = 0; k <= st.row; ++k) {
                for (std::size_t c = 0; c < 30; ++c) processed(k, c) = aw(k, c);
                used_w(k, k) = 1.0;
            }
            const auto nullrel = oracle::check_nullspace_relations(h, processed, used_w, 1e-10);
            ok = ok && structure.passed && nullrel.passed;
            worst = std::max(worst, std::max(structure.max_violation, nullrel.max_violation));

            // p_i has exact unit diagonal and zero tail
            const DenseVector& p = st.p;
            if (p[st.row] != 1.0) ok = false;
            for (std::size_t c = st.row + 1; c < 30; ++c)
                if (p[c] != 0.0) ok = false;
        }

        DenseMatrix a_indep(20, 30);
        for (std::size_t k = 0; k < 20; ++k)
            for (std::size_t c = 0; c < 30; ++c) a_indep(k, c) = aw(k, c);
        const auto fact = oracle::check_implicit_factorization(a_indep, trace.p_matrix, 1e-10);
        ok = ok && fact.passed;
        worst = std::max(worst, fact.max_violation);
    }
    const double secs = seconds_since(t0);
    ok = ok && secs < 30.0;
    std::ostringstream detail;
    detail << "100 systems, worst tolerated violation " << worst << ", " << secs << " s";
    report(5, "structural invariant suite", ok, detail.str());
}

// 6. Solution variety and null-space basis on compatible underdetermined
//    systems (m = 10, n = 25).
void criterion_solution_variety() {
    std::mt19937_64 rng(20240006);
    bool ok = true;
    double worst_res = 0.0;
    for (int t = 0; t < 20 && ok; ++t) {
        const DenseMatrix a = random_matrix(10, 25, rng);
        const DenseVector xt = random_vector(25, rng);
        const DenseVector b = matvec(a, xt);
        SolveOptions opts;
        opts.keep_final_h = true;
        const SolveReport rep = ilu_pivot_col(a, b, opts);
        if (!rep.success() || !rep.final_h) {
            ok = false;
            break;
        }
        const double lim = 1e-8 * (1.0 + norm2(b));
        for (int k = 0; k < 10; ++k) {
            const DenseVector q = random_vector(25, rng);
            const DenseVector x = solution_variety_sample(rep.solution, *rep.final_h, q);
            const double res = oracle::residual_norm(a, x, b);
            worst_res = std::max(worst_res, res);
            if (res > lim) ok = false;
        }
        const auto basis = nullspace_basis(rep, *rep.final_h);
        if (basis.size() != 25 - rep.rank) ok = false;
        for (const DenseVector& col : basis)
            if (norm2(matvec(a, col)) > 1e-10 * a.inf_norm()) ok = false;
    }
    std::ostringstream detail;
    detail << "20 systems x 10 samples, worst variety residual " << worst_res;
    report(6, "solution variety and null-space basis", ok, detail.str());
}

// 7. Compact and explicit storage agree entrywise, and the compact write
//    count equals the sum of i*(n-i) over eliminated rows.
void criterion_mode_equivalence() {
    std::mt19937_64 rng(20240007);
    bool ok = true;
    double worst = 0.0;
    for (int t = 0; t < 100 && ok; ++t) {
        const DenseMatrix a = random_matrix(10, 15, rng);
        const DenseVector b = random_vector(10, rng);
        SolveOptions compact;
        compact.keep_final_h = true;
        SolveOptions expl = compact;
        expl.mode = Mode::Explicit;
        const SolveReport rc = ilu_pivot_col(a, b, compact);
        const SolveReport re = ilu_pivot_col(a, b, expl);
        if (!rc.success() || !re.success()) {
            ok = false;
            break;
        }
        for (std::size_t i = 0; i < 15; ++i)
            worst = std::max(worst, std::fabs(rc.solution[i] - re.solution[i]));
        for (std::size_t i = 0; i < 15; ++i)
            for (std::size_t j = 0; j < 15; ++j)
                worst = std::max(worst, std::fabs((*rc.final_h)(i, j) - (*re.final_h)(i, j)));
        if (worst > 1e-12) ok = false;

        unsigned long long expect = 0;
        for (std::size_t r = 0; r < rc.row_status.size(); ++r)
            if (rc.row_status[r] == RowStatus::Solved)
                expect += static_cast<unsigned long long>(r + 1) * (15 - r - 1);
        if (rc.counters.h_writes != expect || re.counters.h_writes != expect) ok = false;
    }
    std::ostringstream detail;
    detail << "100 dual-mode runs, max entrywise gap " << worst
           << ", write counts match the i*(n-i) sum exactly";
    report(7, "compact/explicit equivalence", ok, detail.str());
}

// 8. Work accounting at n = 200: the instrumented H-update multiplication
//    counter must equal n^3/6 - n/6 exactly, the closed form of the
//    per-stage i*(n-i) writes.
void criterion_work_accounting() {
    std::mt19937_64 rng(20240008);
    const std::size_t n = 200;
    const unsigned long long expect =
        (static_cast<unsigned long long>(n) * n * n - n) / 6;
    const DenseMatrix a = filtered_random_square(n, rng);
    const DenseVector b = random_vector(n, rng);
    const SolveReport pc = ilu_pivot_col(a, b);
    const SolveReport ra = ilu_a(a, b);
    const bool ok = pc.success() && ra.success() && pc.counters.h_mults == expect &&
                    ra.counters.h_mults == expect;
    std::ostringstream detail;
    detail << "expected " << expect << ", pivoted " << pc.counters.h_mults << ", unpivoted "
           << (ra.success() ? std::to_string(ra.counters.h_mults) : "failed");
    report(8, "work accounting", ok, detail.str());
}

// 9. CLI contract: exit codes, the verbatim diagnostic, the record schema,
//    and exact file round-trips.
struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

CliResult run_cli(const std::string& args) {
    static int counter = 0;
    const auto dir = std::filesystem::temp_directory_path();
    const auto outp = dir / ("abs_acc_out_" + std::to_string(counter));
    const auto errp = dir / ("abs_acc_err_" + std::to_string(counter));
    ++counter;
    const std::string cmd =
        std::string(ABS_BIN) + " " + args + " > " + outp.string() + " 2> " + errp.string();
    const int raw = std::system(cmd.c_str());
    CliResult res;
    res.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    std::ifstream of(outp), ef(errp);
    std::ostringstream os, es;
    os << of.rdbuf();
    es << ef.rdbuf();
    res.out = os.str();
    res.err = es.str();
    std::filesystem::remove(outp);
    std::filesystem::remove(errp);
    return res;
}

void criterion_cli_contract() {
    bool ok = true;
    std::ostringstream detail;

    const CliResult success = run_cli("solve --algo ilu-pc --gen mf --m 50 --n 50");
    ok = ok && success.exit_code == 0;
    try {
        const auto j = nlohmann::ordered_json::parse(success.out);
        std::ostringstream keys;
        for (auto it = j.begin(); it != j.end(); ++it) keys << it.key() << ",";
        ok = ok && keys.str() ==
                       "algorithm,generator,mode,m,n,wall_s,mult_count,residual,rank,outcome,"
                       "seed,";
    } catch (...) {
        ok = false;
    }

    ok = ok && run_cli("solve --algo ilu-a --gen mf --m 3 --n 3").exit_code == 3;
    ok = ok && run_cli("solve --algo ilu-pc").exit_code == 1;

    const auto dir = std::filesystem::temp_directory_path() / "abs_acc_fixture";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    write_matrix_file((dir / "a.mtx").string(), DenseMatrix{{1, 0}, {1, 0}});
    write_vector_file((dir / "b.mtx").string(), DenseVector{1, 2});
    const CliResult nosol = run_cli("solve --matrix " + (dir / "a.mtx").string() + " --rhs " +
                                    (dir / "b.mtx").string());
    ok = ok && nosol.exit_code == 2 && nosol.err == "No Solution\n";

    std::mt19937_64 rng(20240009);
    const DenseMatrix a = random_matrix(7, 7, rng);
    write_matrix_file((dir / "r.mtx").string(), a);
    ok = ok && read_matrix_file((dir / "r.mtx").string()) == a;  // 17-digit round-trip
    std::filesystem::remove_all(dir);

    detail << "exit codes 0/2/3/1, verbatim diagnostic, schema, exact round-trip";
    report(9, "command-line contract", ok, detail.str());
}

}  // namespace

int main() {
    std::cout.setf(std::ios::scientific);
    std::cout.precision(3);
    criterion_oracle_equivalence();
    criterion_distance_experiment();
    criterion_regularity_failure();
    criterion_rank_handling();
    criterion_structural_invariants();
    criterion_solution_variety();
    criterion_mode_equivalence();
    criterion_work_accounting();
    criterion_cli_contract();
    if (g_failures == 0)
        std::cout << "all 9 criteria passed\n";
    else
        std::cout << g_failures << " criteria FAILED\n";
    return g_failures == 0 ? 0 : 1;
}
