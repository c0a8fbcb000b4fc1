#include "abslin/abs_general.hpp"

#include <cmath>
#include <utility>

namespace abslin {

ParameterStrategy implicit_lu_strategy() {
    return [](std::size_t i, const DenseMatrix& h, const DenseVector&) {
        DenseVector e(h.rows(), 0.0);
        e[i] = 1.0;
        return StrategyChoice{e, e};
    };
}

DenseMatrix abaffian_update(const DenseMatrix& h, const DenseVector& a, const DenseVector& w,
                            double ep1) {
    const std::size_t n = h.rows();
    if (h.cols() != n) throw DimensionError("abaffian_update: H must be square");
    if (a.size() != n || w.size() != n)
        throw DimensionError("abaffian_update: vector length mismatch");
    const DenseVector u = matvec(h, a);  // H a
    const double denom = dot(w, u);      // w^T H a
    if (std::fabs(denom) <= ep1)
        throw DegenerateUpdate("abaffian_update: |w^T H a| below ep1", 0);
    DenseVector vt(n);  // w^T H
    for (std::size_t c = 0; c < n; ++c) {
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) acc += w[j] * h(j, c);
        vt[c] = acc;
    }
    DenseMatrix out = h;
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t c = 0; c < n; ++c) out(j, c) -= (u[j] * vt[c]) / denom;
    return out;
}

DenseVector search_vector(const DenseMatrix& h, const DenseVector& z) {
    const std::size_t n = h.rows();
    if (h.cols() != n || z.size() != n) throw DimensionError("search_vector: dimension mismatch");
    DenseVector p(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        const double zj = z[j];
        const double* row = h.row_data(j);
        for (std::size_t c = 0; c < n; ++c) p[c] += row[c] * zj;
    }
    return p;
}

double step_size(double tau, const DenseVector& a, const DenseVector& p) {
    const double denom = dot(a, p);
    if (denom == 0.0) throw DegenerateStep("step_size: a^T p is zero");
    return tau / denom;
}

RowStatus compatibility_check(const DenseVector& s, double tau, const Tolerances& tol) {
    if (norm2(s) > tol.ep1) return RowStatus::Solved;
    return std::fabs(tau) <= tol.ep2 ? RowStatus::Dependent : RowStatus::Incompatible;
}

SolveReport abs_solve(const DenseMatrix& a, const DenseVector& b,
                      const ParameterStrategy& strategy, const DenseVector& x1,
                      const DenseMatrix& h1, Tolerances tol, TraceLevel level) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    if (b.size() != m) throw DimensionError("abs_solve: right-hand side length mismatch");
    if (x1.size() != n) throw DimensionError("abs_solve: starting point length mismatch");
    if (h1.rows() != n || h1.cols() != n) throw DimensionError("abs_solve: H1 must be n x n");
    if (!(tol.ep1 >= 0.0) || !(tol.ep2 >= 0.0))
        throw ParamError("abs_solve: tolerances must be nonnegative");

    DenseVector x = x1;
    DenseMatrix h = h1;
    WorkCounters wc;
    const bool tracing = level != TraceLevel::None;
    AbsTrace trace;

    SolveReport rep;
    rep.permutation = Permutation(n);
    rep.row_status.reserve(m);
    std::size_t rank = 0;
    bool failed = false;

    for (std::size_t i = 0; i < m; ++i) {
        const DenseVector arow = a.row(i);
        const DenseVector s = matvec(h, arow);
        wc.s_mults += static_cast<unsigned long long>(n) * n;
        const double tau = dot(arow, x) - b[i];

        const RowStatus status = compatibility_check(s, tau, tol);
        if (status == RowStatus::Dependent) {
            rep.row_status.push_back(status);
            if (tracing) trace.steps.push_back({i, status, s, 0.0, 0.0, DenseVector{}});
            continue;
        }
        if (status == RowStatus::Incompatible) {
            rep.row_status.push_back(status);
            if (tracing) trace.steps.push_back({i, status, s, 0.0, 0.0, DenseVector{}});
            rep.outcome = Outcome::Incompatible;
            rep.failing_row = i;
            rep.iflag = -static_cast<int>(i + 1);
            failed = true;
            break;
        }

        StrategyChoice choice = strategy(i, h, arow);
        if (choice.z.size() != n || choice.w.size() != n)
            throw DimensionError("abs_solve: strategy returned wrong-sized parameters");
        if (std::fabs(dot(choice.z, s)) <= tol.ep1)
            throw DegenerateUpdate("abs_solve: z^T H a vanished on an independent row", i);
        if (std::fabs(dot(choice.w, s)) <= tol.ep1)
            throw DegenerateUpdate("abs_solve: w^T H a vanished on an independent row", i);

        const DenseVector p = search_vector(h, choice.z);
        const double denom = dot(arow, p);
        const double alpha = step_size(tau, arow, p);
        for (std::size_t c = 0; c < n; ++c) x[c] -= alpha * p[c];
        wc.x_mults += n;

        h = abaffian_update(h, arow, choice.w, tol.ep1);
        const unsigned long long nn = static_cast<unsigned long long>(n) * n;
        wc.h_mults += nn;
        wc.h_divs += nn;
        wc.h_writes += nn;

        rep.row_status.push_back(RowStatus::Solved);
        ++rank;
        if (tracing) trace.steps.push_back({i, RowStatus::Solved, s, denom, alpha, p});
        if (level == TraceLevel::Full) trace.h_snapshots.push_back(h);
    }

    rep.rank = rank;
    rep.counters = wc;
    if (!failed) {
        rep.outcome = Outcome::Success;
        rep.iflag = static_cast<int>(m - rank);
        rep.nullspace_dim = n - rank;
        rep.solution = x;
        rep.final_h = h;
    }
    if (tracing) {
        trace.final_h = h;
        if (rank > 0) {
            trace.p_matrix = DenseMatrix(n, rank);
            std::size_t col = 0;
            for (const TraceStep& st : trace.steps) {
                if (st.status != RowStatus::Solved) continue;
                for (std::size_t c = 0; c < n; ++c) trace.p_matrix(c, col) = st.p[c];
                ++col;
            }
        }
        rep.trace = std::move(trace);
    }
    return rep;
}

}  // namespace abslin
