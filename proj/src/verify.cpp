#include <cmath>
#include <iomanip>
#include <ostream>

#include "abslin/generators.hpp"
#include "abslin/harness.hpp"
#include "abslin/oracle.hpp"

// Self-check suites behind `abs verify`.

namespace abslin {

namespace {

void emit(std::ostream& out, const oracle::PropertyReport& rep, int& failures) {
    if (!rep.passed) ++failures;
    out << (rep.passed ? "ok   " : "FAIL ") << rep.name << " [" << rep.context
        << "] max_violation=" << std::scientific << std::setprecision(3) << rep.max_violation
        << std::defaultfloat << "\n";
}

oracle::PropertyReport unit_upper_triangular(const DenseMatrix& p,
                                             const std::vector<std::size_t>& stages) {
    oracle::PropertyReport rep;
    rep.name = "p_unit_upper_triangular";
    rep.context = std::to_string(p.rows()) + "x" + std::to_string(p.cols());
    double worst = 0.0;
    for (std::size_t j = 0; j < p.cols(); ++j) {
        const std::size_t r = stages[j];
        worst = std::max(worst, std::fabs(p(r, j) - 1.0));
        for (std::size_t c = r + 1; c < p.rows(); ++c)
            worst = std::max(worst, std::fabs(p(c, j)));
    }
    rep.max_violation = worst;
    rep.passed = worst == 0.0;
    return rep;
}

int verify_structure(std::uint64_t seed, std::ostream& out) {
    int failures = 0;
    std::mt19937_64 rng(seed);
    const std::size_t shapes[][2] = {{8, 8}, {10, 16}, {12, 12}, {14, 20}};
    for (const auto& shape : shapes) {
        const std::size_t m = shape[0], n = shape[1];
        const DenseMatrix a = random_matrix(m, n, rng);
        const DenseVector b = random_vector(m, rng);

        SolveOptions opts;
        opts.mode = Mode::Explicit;
        opts.trace = TraceLevel::Full;
        const SolveReport rep = ilu_pivot_col(a, b, opts);
        if (!rep.success() || !rep.trace) {
            out << "FAIL structure_solve [" << m << "x" << n << "] outcome="
                << to_string(rep.outcome) << "\n";
            ++failures;
            continue;
        }
        const AbsTrace& trace = *rep.trace;
        const DenseMatrix aw = permuted_cols(a, rep.permutation);

        std::vector<std::size_t> stages;
        std::size_t snap = 0;
        for (const TraceStep& st : trace.steps) {
            if (st.status != RowStatus::Solved) continue;
            stages.push_back(st.row);
            const DenseMatrix& h = trace.h_snapshots[snap++];
            emit(out, oracle::check_abaffian_structure(h, st.row + 1), failures);

            DenseMatrix processed(st.row + 1, n);
            DenseMatrix used_w(n, st.row + 1, 0.0);
            for (std::size_t k = 0; k <= st.row; ++k) {
                for (std::size_t c = 0; c < n; ++c) processed(k, c) = aw(k, c);
                used_w(k, k) = 1.0;
            }
            emit(out, oracle::check_nullspace_relations(h, processed, used_w, 1e-10), failures);
        }

        DenseMatrix a_indep(rep.rank, n);
        for (std::size_t k = 0; k < rep.rank; ++k)
            for (std::size_t c = 0; c < n; ++c) a_indep(k, c) = aw(stages[k], c);
        emit(out, oracle::check_implicit_factorization(a_indep, trace.p_matrix, 1e-10), failures);
        emit(out, unit_upper_triangular(trace.p_matrix, stages), failures);
    }
    return failures;
}

int verify_oracle(std::uint64_t seed, std::ostream& out) {
    int failures = 0;
    std::mt19937_64 rng(seed);

    double worst_pc = 0.0, worst_pr = 0.0, worst_a = 0.0;
    const int trials = 50;
    for (int t = 0; t < trials; ++t) {
        const std::size_t n = 2 + static_cast<std::size_t>(rng() % 29);
        DenseMatrix a(1, 1);
        oracle::GaussResult ref;
        do {
            a = random_matrix(n, n, rng);
            ref = oracle::gauss_solve(a, DenseVector(n, 1.0));
        } while (ref.status != oracle::GaussStatus::Solved || ref.pivot_ratio > 1e8);
        const DenseVector b = random_vector(n, rng);
        ref = oracle::gauss_solve(a, b);

        const double scale = norm_inf(ref.x);
        auto gap = [&](const SolveReport& rep) {
            double g = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                g = std::max(g, std::fabs(rep.solution[i] - ref.x[i]));
            return g / scale;
        };
        worst_pc = std::max(worst_pc, gap(ilu_pivot_col(a, b)));
        worst_pr = std::max(worst_pr, gap(ilu_pivot_row(a, b)));
        const SolveReport ra = ilu_a(a, b);
        if (ra.success()) worst_a = std::max(worst_a, gap(ra));
    }
    auto agree = [&](const char* name, double worst) {
        oracle::PropertyReport rep;
        rep.name = name;
        rep.context = std::to_string(trials) + " random square systems";
        rep.max_violation = worst;
        rep.passed = worst <= 1e-7;
        emit(out, rep, failures);
    };
    agree("oracle_agreement_ilu_pc", worst_pc);
    agree("oracle_agreement_ilu_pr", worst_pr);
    agree("oracle_agreement_ilu_a", worst_a);

    {
        oracle::PropertyReport rep;
        rep.name = "rank_detection";
        rep.context = "rank-deficient systems";
        rep.passed = true;
        for (std::size_t r : {2ul, 5ul, 9ul}) {
            const GeneratedSystem g = gen_rank_deficient(12, 18, r, seed + r);
            const SolveReport pc = ilu_pivot_col(g.a, g.b);
            const SolveReport pr = ilu_pivot_row(g.a, g.b);
            const std::size_t expect = oracle::rank_oracle(g.a);
            if (expect != r || !pc.success() || !pr.success() || pc.rank != r || pr.rank != r)
                rep.passed = false;
            const double lim = 1e-8 * (1.0 + norm2(g.b));
            const double res = std::max(oracle::residual_norm(g.a, pc.solution, g.b),
                                        oracle::residual_norm(g.a, pr.solution, g.b));
            rep.max_violation = std::max(rep.max_violation, res / lim);
            if (res > lim) rep.passed = false;
        }
        emit(out, rep, failures);
    }
    return failures;
}

}  // namespace

int run_verify(const std::string& suite, std::uint64_t seed, std::ostream& out) {
    int failures = 0;
    if (suite == "structure" || suite == "all") failures += verify_structure(seed, out);
    if (suite == "oracle" || suite == "all") failures += verify_oracle(seed, out);
    if (suite != "structure" && suite != "oracle" && suite != "all")
        throw ParamError("unknown verify suite '" + suite + "'");
    out << (failures == 0 ? "all properties passed\n"
                          : std::to_string(failures) + " properties FAILED\n");
    return failures;
}

}  // namespace abslin
