#include "abslin/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace abslin::oracle {

namespace {

struct Elimination {
    DenseMatrix u;
    DenseVector c;
    std::vector<std::size_t> pivot_cols;  // one per pivot row, ascending
    std::size_t rank = 0;
    double max_pivot = 0.0;
    double min_pivot = 0.0;
};

// Row-echelon reduction with partial row pivoting. Columns whose best pivot
// falls at or below `threshold` are treated as free.
Elimination eliminate(const DenseMatrix& a, const DenseVector& b, double threshold) {
    Elimination e;
    e.u = a;
    e.c = b;
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < m; ++col) {
        std::size_t piv = row;
        for (std::size_t i = row + 1; i < m; ++i)
            if (std::fabs(e.u(i, col)) > std::fabs(e.u(piv, col))) piv = i;
        const double pval = std::fabs(e.u(piv, col));
        if (pval <= threshold) continue;
        if (piv != row) {
            e.u.swap_rows(piv, row);
            std::swap(e.c[piv], e.c[row]);
        }
        for (std::size_t i = row + 1; i < m; ++i) {
            const double factor = e.u(i, col) / e.u(row, col);
            e.u(i, col) = 0.0;
            for (std::size_t j = col + 1; j < n; ++j) e.u(i, j) -= factor * e.u(row, j);
            e.c[i] -= factor * e.c[row];
        }
        e.pivot_cols.push_back(col);
        if (e.pivot_cols.size() == 1) {
            e.max_pivot = e.min_pivot = pval;
        } else {
            e.max_pivot = std::max(e.max_pivot, pval);
            e.min_pivot = std::min(e.min_pivot, pval);
        }
        ++row;
    }
    e.rank = e.pivot_cols.size();
    return e;
}

}  // namespace

GaussResult gauss_solve(const DenseMatrix& a, const DenseVector& b) {
    if (a.rows() > a.cols()) throw DimensionError("gauss_solve: system must have rows <= cols");
    if (b.size() != a.rows()) throw DimensionError("gauss_solve: right-hand side length mismatch");
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    const double threshold = 1e-10 * a.inf_norm();
    Elimination e = eliminate(a, b, threshold);

    GaussResult res;
    res.rank = e.rank;
    res.pivot_ratio = e.rank == 0 ? 0.0 : e.max_pivot / e.min_pivot;

    const double incompat_tol = 1e-8 * (1.0 + norm2(b));
    for (std::size_t i = e.rank; i < m; ++i) {
        if (std::fabs(e.c[i]) > incompat_tol) {
            res.status = GaussStatus::Incompatible;
            return res;
        }
    }

    res.x.assign(n, 0.0);
    for (std::size_t k = e.rank; k-- > 0;) {
        const std::size_t jc = e.pivot_cols[k];
        double acc = e.c[k];
        for (std::size_t j = jc + 1; j < n; ++j) acc -= e.u(k, j) * res.x[j];
        res.x[jc] = acc / e.u(k, jc);
    }
    res.status = e.rank == m ? GaussStatus::Solved : GaussStatus::RankDeficient;
    return res;
}

double residual_norm(const DenseMatrix& a, const DenseVector& x, const DenseVector& b) {
    if (a.cols() != x.size() || a.rows() != b.size())
        throw DimensionError("residual_norm: dimension mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const double r = dot(a.row(i), x) - b[i];
        acc += r * r;
    }
    return std::sqrt(acc);
}

std::size_t rank_oracle(const DenseMatrix& a) {
    const DenseVector zero(a.rows(), 0.0);
    return eliminate(a, zero, 1e-10 * a.inf_norm()).rank;
}

PropertyReport check_implicit_factorization(const DenseMatrix& a_indep, const DenseMatrix& p,
                                            double tol_struct) {
    if (a_indep.cols() != p.rows() || a_indep.rows() != p.cols())
        throw DimensionError("check_implicit_factorization: dimension mismatch");
    const std::size_t t = a_indep.rows();
    DenseMatrix l(t, t);
    for (std::size_t i = 0; i < t; ++i)
        for (std::size_t j = 0; j < t; ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < a_indep.cols(); ++k) acc += a_indep(i, k) * p(k, j);
            l(i, j) = acc;
        }
    const double scale = l.max_abs();

    PropertyReport rep;
    rep.name = "implicit_factorization";
    rep.context = std::to_string(t) + "x" + std::to_string(a_indep.cols());
    double worst_upper = 0.0;
    double smallest_diag = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < t; ++i) {
        smallest_diag = std::min(smallest_diag, std::fabs(l(i, i)));
        for (std::size_t j = i + 1; j < t; ++j)
            worst_upper = std::max(worst_upper, std::fabs(l(i, j)));
    }
    rep.max_violation = scale > 0.0 ? worst_upper / scale : worst_upper;
    rep.passed = worst_upper <= tol_struct * scale && smallest_diag > tol_struct * scale;
    return rep;
}

PropertyReport check_abaffian_structure(const DenseMatrix& h, std::size_t i) {
    const std::size_t n = h.rows();
    if (h.cols() != n) throw DimensionError("check_abaffian_structure: H must be square");
    if (i > n) throw ParamError("check_abaffian_structure: i out of range");

    PropertyReport rep;
    rep.name = "abaffian_structure";
    rep.context = "n=" + std::to_string(n) + " i=" + std::to_string(i);
    double worst = 0.0;
    for (std::size_t r = 0; r < i; ++r)
        for (std::size_t c = 0; c < n; ++c) worst = std::max(worst, std::fabs(h(r, c)));
    for (std::size_t r = i; r < n; ++r)
        for (std::size_t c = i; c < n; ++c) {
            const double expect = r == c ? 1.0 : 0.0;
            worst = std::max(worst, std::fabs(h(r, c) - expect));
        }
    rep.max_violation = worst;
    rep.passed = worst == 0.0;  // exactness required
    return rep;
}

PropertyReport check_nullspace_relations(const DenseMatrix& h_next,
                                         const DenseMatrix& processed_rows,
                                         const DenseMatrix& used_w, double tol_struct) {
    const std::size_t n = h_next.rows();
    if (h_next.cols() != n || processed_rows.cols() != n || used_w.rows() != n)
        throw DimensionError("check_nullspace_relations: dimension mismatch");

    PropertyReport rep;
    rep.name = "nullspace_relations";
    rep.context = "t=" + std::to_string(processed_rows.rows());
    double worst = 0.0;
    for (std::size_t k = 0; k < processed_rows.rows(); ++k) {
        const DenseVector ak = processed_rows.row(k);
        const double scale = norm2(ak);
        const double v = norm2(matvec(h_next, ak));
        worst = std::max(worst, scale > 0.0 ? v / scale : v);
    }
    for (std::size_t k = 0; k < used_w.cols(); ++k) {
        DenseVector hw(n, 0.0);
        for (std::size_t c = 0; c < n; ++c) {
            double acc = 0.0;
            for (std::size_t j = 0; j < n; ++j) acc += h_next(j, c) * used_w(j, k);
            hw[c] = acc;
        }
        worst = std::max(worst, norm2(hw));
    }
    rep.max_violation = worst;
    rep.passed = worst <= tol_struct;
    return rep;
}

}  // namespace abslin::oracle
