#include "abslin/ilu.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <memory>

#include "abslin/kernels.hpp"

namespace abslin {

CompactAbaffian::CompactAbaffian(std::size_t n, std::size_t m)
    : n_(n), m_(m), k_(n * m, 0.0), updated_(n, false) {
    if (n == 0 || m == 0 || m > n)
        throw DimensionError("CompactAbaffian: need 1 <= m <= n");
}

void CompactAbaffian::update(const DenseVector& s, double d, double ep1, WorkCounters& wc) {
    if (stage_ >= m_) throw StateError("CompactAbaffian::update: all rows processed");
    if (s.size() != n_) throw DimensionError("CompactAbaffian::update: bad s length");
    if (std::fabs(d) <= ep1)
        throw DegenerateUpdate("CompactAbaffian::update: denominator below ep1", stage_);
    // Pivot row with the implicit unit diagonal materialized at [stage].
    scratch_.assign(k_.begin() + stage_ * m_, k_.begin() + stage_ * m_ + stage_);
    scratch_.push_back(1.0);
    kernels::par::update_block(k_.data(), m_, stage_, n_, scratch_.data(), s.data(), d, wc);
    updated_[stage_] = true;
    ++stage_;
}

void CompactAbaffian::skip() {
    if (stage_ >= m_) throw StateError("CompactAbaffian::skip: all rows processed");
    ++stage_;
}

void CompactAbaffian::swap_positions(std::size_t i, std::size_t k) {
    if (i >= n_ || k >= n_) throw IndexError("CompactAbaffian::swap_positions: out of range");
    if (i < stage_ || k < stage_)
        throw StateError("CompactAbaffian::swap_positions: position already processed");
    if (i == k) return;
    std::swap_ranges(k_.begin() + i * m_, k_.begin() + (i + 1) * m_, k_.begin() + k * m_);
}

DenseMatrix CompactAbaffian::reconstruct() const {
    DenseMatrix h(n_, n_, 0.0);
    for (std::size_t j = 0; j < n_; ++j) {
        if (updated_[j]) continue;  // zeroed row
        const double* row = k_.data() + j * m_;
        for (std::size_t c = 0; c < stage_; ++c) h(j, c) = row[c];
        h(j, j) = 1.0;
    }
    return h;
}

namespace {

enum class PivotKind { None, Column, Row };

void validate_tolerances(const Tolerances& tol) {
    if (!(tol.ep1 >= 0.0) || !(tol.ep2 >= 0.0) || !std::isfinite(tol.ep1) ||
        !std::isfinite(tol.ep2))
        throw ParamError("tolerances must be nonnegative and finite");
}

// Storage behind a solve: the full Abaffian (explicit mode, serial
// reference kernels) or its leading block (compact mode, OpenMP kernels).
struct Store {
    Mode mode;
    std::size_t n;
    std::size_t stage = 0;
    DenseMatrix h;       // explicit
    CompactAbaffian k;   // compact

    Store(Mode mode_, std::size_t n_, std::size_t m_) : mode(mode_), n(n_) {
        if (mode == Mode::Explicit)
            h = DenseMatrix::identity(n_);
        else
            k = CompactAbaffian(n_, m_);
    }

    const double* row_ptr(std::size_t r) const {
        return mode == Mode::Explicit ? h.row_data(r) : k.buffer() + r * k.ld();
    }

    void project(std::size_t r, const double* arow, DenseVector& s, WorkCounters& wc) {
        if (mode == Mode::Explicit)
            kernels::serial::project_tail(h.data(), n, r, n, arow, s.data(), wc);
        else
            kernels::par::project_tail(k.buffer(), k.ld(), r, n, arow, s.data(), wc);
    }

    void pivot_values(std::size_t r, const DenseMatrix& aw, std::size_t row_end, double* vals) {
        if (mode == Mode::Explicit)
            kernels::serial::pivot_row_values(h.data(), n, r, aw, r, row_end, vals);
        else
            kernels::par::pivot_row_values(k.buffer(), k.ld(), r, aw, r, row_end, vals);
    }

    void update(const DenseVector& s, double d, double ep1, WorkCounters& wc) {
        if (mode == Mode::Explicit) {
            kernels::serial::update_block(h.data(), n, stage, n, h.row_data(stage), s.data(), d,
                                          wc);
        } else {
            k.update(s, d, ep1, wc);
        }
        ++stage;
    }

    void skip() {
        if (mode == Mode::Compact) k.skip();
        ++stage;
    }

    void swap_positions(std::size_t i, std::size_t kpos) {
        if (mode == Mode::Explicit) {
            // Conjugation by the transposition: both rows and columns swap.
            h.swap_rows(i, kpos);
            h.swap_cols(i, kpos);
        } else {
            k.swap_positions(i, kpos);
        }
    }

    DenseMatrix reconstruct() const { return mode == Mode::Explicit ? h : k.reconstruct(); }
};

double row_dot(const double* row, const DenseVector& x) {
    double acc = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) acc += row[j] * x[j];
    return acc;
}

// Search vector of the current stage: row r of H plus the unit diagonal.
DenseVector search_column(const Store& store, std::size_t r, std::size_t n) {
    DenseVector p(n, 0.0);
    const double* row = store.row_ptr(r);
    for (std::size_t c = 0; c < r; ++c) p[c] = row[c];
    p[r] = 1.0;
    return p;
}

DenseMatrix conjugate_by(const DenseMatrix& h, const Permutation& perm) {
    DenseMatrix out(h.rows(), h.cols(), 0.0);
    for (std::size_t j = 0; j < h.rows(); ++j)
        for (std::size_t c = 0; c < h.cols(); ++c) out(perm[j], perm[c]) = h(j, c);
    return out;
}

SolveReport ilu_run(const DenseMatrix& a, const DenseVector& b, const SolveOptions& opts,
                    PivotKind kind) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    if (m > n) throw DimensionError("implicit LU: system must have rows <= cols");
    if (b.size() != m) throw DimensionError("implicit LU: right-hand side length mismatch");
    validate_tolerances(opts.tol);
    const Tolerances tol = opts.tol;

    DenseMatrix aw = a;  // working copy; caller data is never mutated
    DenseVector bw = b;
    DenseVector x(n, 0.0);
    Permutation perm(kind == PivotKind::Row ? m : n);
    Store store(opts.mode, n, m);
    WorkCounters wc;
    DenseVector s(n, 0.0);
    DenseVector pivot_vals;

    const bool tracing = opts.trace != TraceLevel::None;
    AbsTrace trace;

    SolveReport rep;
    rep.row_status.reserve(m);
    std::size_t rank = 0;
    bool failed = false;

    for (std::size_t r = 0; r < m; ++r) {
        if (kind == PivotKind::Row) {
            pivot_vals.resize(m - r);
            store.pivot_values(r, aw, m, pivot_vals.data());
            std::size_t ki = r;
            double best = -1.0;
            for (std::size_t j = 0; j < pivot_vals.size(); ++j) {
                if (best < std::fabs(pivot_vals[j])) {
                    best = std::fabs(pivot_vals[j]);
                    ki = r + j;
                }
            }
            if (ki != r) {
                aw.swap_rows(r, ki);
                std::swap(bw[r], bw[ki]);
                perm.swap(r, ki);
            }
        }

        std::fill(s.begin(), s.end(), 0.0);
        store.project(r, aw.row_data(r), s, wc);

        if (kind == PivotKind::Column) {
            std::size_t ki = r;
            double best = -1.0;
            for (std::size_t j = r; j < n; ++j) {
                if (best < std::fabs(s[j])) {
                    best = std::fabs(s[j]);
                    ki = j;
                }
            }
            if (ki != r) {
                aw.swap_cols(r, ki);
                std::swap(s[r], s[ki]);
                // the solution update only ever touches positions <= stage
                assert(x[r] == 0.0 && x[ki] == 0.0);
                std::swap(x[r], x[ki]);
                store.swap_positions(r, ki);
                perm.swap(r, ki);
                // Keep recorded history in the final coordinate system:
                // conjugate earlier snapshots by the transposition. Earlier
                // search vectors are zero at both positions, so they are
                // already consistent.
                for (DenseMatrix& snap : trace.h_snapshots) {
                    snap.swap_rows(r, ki);
                    snap.swap_cols(r, ki);
                }
                for (TraceStep& st : trace.steps)
                    if (!st.s.empty()) std::swap(st.s[r], st.s[ki]);
            }
        }

        const double tau = row_dot(aw.row_data(r), x) - bw[r];
        const double d = s[r];

        bool eliminate;
        if (kind == PivotKind::None) {
            const double ns = norm2(s);
            if (ns <= tol.ep1) {
                eliminate = false;
            } else if (std::fabs(d) <= tol.ep1) {
                // Nonzero projected row but vanishing diagonal denominator:
                // a leading principal submatrix is singular.
                rep.outcome = Outcome::SingularPrincipalMinor;
                rep.failing_row = r;
                rep.iflag = -static_cast<int>(r + 1);
                failed = true;
                break;
            } else {
                eliminate = true;
            }
        } else {
            eliminate = std::fabs(d) > tol.ep1;
        }

        if (!eliminate) {
            if (std::fabs(tau) <= tol.ep2) {
                rep.row_status.push_back(RowStatus::Dependent);
                if (tracing)
                    trace.steps.push_back({r, RowStatus::Dependent, s, d, 0.0, DenseVector{}});
                store.skip();
                continue;
            }
            rep.row_status.push_back(RowStatus::Incompatible);
            if (tracing)
                trace.steps.push_back({r, RowStatus::Incompatible, s, d, 0.0, DenseVector{}});
            rep.outcome = Outcome::Incompatible;
            rep.failing_row = kind == PivotKind::Row ? perm[r] : r;
            rep.iflag = -static_cast<int>(r + 1);
            failed = true;
            break;
        }

        const double alpha = tau / d;
        const double* hrow = store.row_ptr(r);
        if (tracing) trace.steps.push_back({r, RowStatus::Solved, s, d, alpha,
                                            search_column(store, r, n)});
        for (std::size_t c = 0; c < r; ++c) x[c] -= alpha * hrow[c];
        x[r] -= alpha;
        wc.x_mults += r + 1;

        store.update(s, d, tol.ep1, wc);
        rep.row_status.push_back(RowStatus::Solved);
        ++rank;

        if (opts.trace == TraceLevel::Full) trace.h_snapshots.push_back(store.reconstruct());
    }

    rep.rank = rank;
    rep.permutation = perm;
    rep.counters = wc;

    if (!failed) {
        rep.outcome = Outcome::Success;
        rep.iflag = static_cast<int>(m - rank);
        rep.nullspace_dim = n - rank;
        rep.solution = kind == PivotKind::Column ? perm.apply_inverse(x) : x;
        if (opts.keep_final_h) {
            DenseMatrix hfin = store.reconstruct();
            rep.final_h =
                kind == PivotKind::Column ? conjugate_by(hfin, perm) : std::move(hfin);
            if (opts.mode == Mode::Compact)
                rep.compact_h = std::make_shared<const CompactAbaffian>(store.k);
        }
    }

    if (tracing) {
        trace.final_h = store.reconstruct();
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

}  // namespace

SolveReport ilu_a(const DenseMatrix& a, const DenseVector& b, const SolveOptions& opts) {
    return ilu_run(a, b, opts, PivotKind::None);
}

SolveReport ilu_a(const DenseMatrix& a, const DenseVector& b, Tolerances tol) {
    return ilu_a(a, b, SolveOptions{tol});
}

SolveReport ilu_pivot_col(const DenseMatrix& a, const DenseVector& b, const SolveOptions& opts) {
    return ilu_run(a, b, opts, PivotKind::Column);
}

SolveReport ilu_pivot_col(const DenseMatrix& a, const DenseVector& b, Tolerances tol) {
    return ilu_pivot_col(a, b, SolveOptions{tol});
}

SolveReport ilu_pivot_row(const DenseMatrix& a, const DenseVector& b, const SolveOptions& opts) {
    return ilu_run(a, b, opts, PivotKind::Row);
}

SolveReport ilu_pivot_row(const DenseMatrix& a, const DenseVector& b, Tolerances tol) {
    return ilu_pivot_row(a, b, SolveOptions{tol});
}

std::vector<DenseVector> nullspace_basis(const SolveReport& report, const DenseMatrix& final_h) {
    if (!report.success()) throw StateError("nullspace_basis: solve did not succeed");
    const std::size_t n = final_h.rows();
    if (final_h.cols() != n) throw DimensionError("nullspace_basis: final_h must be square");
    std::vector<DenseVector> basis;
    basis.reserve(report.nullspace_dim);
    for (std::size_t j = 0; j < n; ++j) {
        bool nonzero = false;
        for (std::size_t c = 0; c < n; ++c) {
            if (final_h(j, c) != 0.0) {
                nonzero = true;
                break;
            }
        }
        if (nonzero) basis.push_back(final_h.row(j));
    }
    if (basis.size() != report.nullspace_dim)
        throw StateError("nullspace_basis: nonzero row count does not match n - rank");
    return basis;
}

std::vector<DenseVector> nullspace_basis_compact(const CompactAbaffian& h,
                                                 const Permutation& col_perm, std::size_t rank) {
    const std::size_t n = h.n();
    if (col_perm.size() != n) throw DimensionError("nullspace_basis_compact: bad permutation");
    // Emit in ascending original row order, matching the reconstruction route.
    std::vector<std::size_t> positions;
    positions.reserve(n - rank);
    for (std::size_t j = 0; j < n; ++j)
        if (!h.updated(j)) positions.push_back(j);
    std::sort(positions.begin(), positions.end(),
              [&](std::size_t a, std::size_t b) { return col_perm[a] < col_perm[b]; });

    std::vector<DenseVector> basis;
    basis.reserve(positions.size());
    for (std::size_t j : positions) {
        DenseVector v(n, 0.0);
        const double* row = h.buffer() + j * h.ld();
        const std::size_t width = std::min(h.stage(), h.ld());
        for (std::size_t c = 0; c < width; ++c) v[col_perm[c]] = row[c];
        v[col_perm[j]] = 1.0;
        basis.push_back(std::move(v));
    }
    return basis;
}

DenseVector solution_variety_sample(const DenseVector& x, const DenseMatrix& final_h,
                                    const DenseVector& q) {
    const std::size_t n = x.size();
    if (final_h.rows() != n || final_h.cols() != n || q.size() != n)
        throw DimensionError("solution_variety_sample: dimension mismatch");
    DenseVector out = x;
    for (std::size_t j = 0; j < n; ++j) {
        const double qj = q[j];
        const double* row = final_h.row_data(j);
        for (std::size_t c = 0; c < n; ++c) out[c] += row[c] * qj;
    }
    return out;
}

}  // namespace abslin
