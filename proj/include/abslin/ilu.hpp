#pragma once

// The three implicit LU solvers: no pivoting, column pivoting, row pivoting.
// All start from x = 0, H = I and eliminate one equation per stage with the
// unit-vector parameter choice. Two storage modes are available:
//
//   Explicit: the full n x n Abaffian, updated by the serial reference
//              kernels; mirrors the classical formulation and is the mode
//              used by the structural invariant checks.
//   Compact:  only the leading n x m block (everything outside it is zero
//              or identity), updated by the OpenMP kernels.
//
// Both modes perform identical floating-point operations in identical
// order, so their results match bit for bit.

#include <cstddef>
#include <optional>
#include <vector>

#include "abslin/core.hpp"
#include "abslin/report.hpp"

namespace abslin {

enum class Mode : std::uint8_t { Compact, Explicit };

struct SolveOptions {
    Tolerances tol{};
    Mode mode = Mode::Compact;
    TraceLevel trace = TraceLevel::None;
    /// Reconstruct and keep the final Abaffian in the report (needed for
    /// null-space extraction and solution-variety sampling).
    bool keep_final_h = false;
};

/// Compact storage of the implicit LU Abaffian. After i processed rows only
/// the leading n x i block can differ from the [[0,0],[K,I]] pattern, so an
/// n x m buffer holds every nontrivial entry; the trailing identity is
/// implicit. Rows of skipped (dependent) equations freeze in place and keep
/// their unit diagonal.
class CompactAbaffian {
  public:
    CompactAbaffian() = default;
    CompactAbaffian(std::size_t n, std::size_t m);

    std::size_t n() const noexcept { return n_; }
    std::size_t stage() const noexcept { return stage_; }

    const double* buffer() const noexcept { return k_.data(); }
    double* buffer() noexcept { return k_.data(); }
    std::size_t ld() const noexcept { return m_; }

    /// Apply H <- H - s e_i^T H / d at the current stage and advance.
    /// Writes exactly i*(n-i) block entries for one-based stage i.
    /// Throws DegenerateUpdate when |d| <= ep1.
    void update(const DenseVector& s, double d, double ep1, WorkCounters& wc);

    /// Advance past a dependent row; the matrix is unchanged and the row
    /// freezes with its unit diagonal.
    void skip();

    /// Exchange variable positions i and k (both >= stage): conjugation by a
    /// transposition, which for this storage is a swap of two buffer rows.
    void swap_positions(std::size_t i, std::size_t k);

    bool updated(std::size_t position) const { return updated_[position]; }

    /// Materialize the full n x n matrix this object represents.
    DenseMatrix reconstruct() const;

  private:
    std::size_t n_ = 0;
    std::size_t m_ = 0;
    std::size_t stage_ = 0;
    std::vector<double> k_;
    std::vector<bool> updated_;
    DenseVector scratch_;  // pivot row staging for update()
};

/// Implicit LU without pivoting. Requires every leading principal submatrix
/// of the processed rows to be nonsingular; on a vanishing diagonal
/// denominator with a nonzero projected row the report carries
/// Outcome::SingularPrincipalMinor (a pivoting variant will succeed).
SolveReport ilu_a(const DenseMatrix& a, const DenseVector& b, const SolveOptions& opts);
SolveReport ilu_a(const DenseMatrix& a, const DenseVector& b, Tolerances tol = {});

/// Implicit LU with column pivoting. The returned solution is restored to
/// the original variable ordering; the applied column interchanges are
/// recorded in SolveReport::permutation.
SolveReport ilu_pivot_col(const DenseMatrix& a, const DenseVector& b, const SolveOptions& opts);
SolveReport ilu_pivot_col(const DenseMatrix& a, const DenseVector& b, Tolerances tol = {});

/// Implicit LU with row pivoting. Equations are reordered (recorded in
/// SolveReport::permutation); the solution needs no component reordering.
SolveReport ilu_pivot_row(const DenseMatrix& a, const DenseVector& b, const SolveOptions& opts);
SolveReport ilu_pivot_row(const DenseMatrix& a, const DenseVector& b, Tolerances tol = {});

/// Columns spanning the null space of A, read off the nonzero rows of the
/// final Abaffian. Empty when the system had full column rank. Throws
/// StateError when called on a failed solve.
std::vector<DenseVector> nullspace_basis(const SolveReport& report, const DenseMatrix& final_h);

/// Same basis assembled directly from compact storage, without
/// materializing H. col_perm must be the column permutation of the solve
/// (identity except under column pivoting).
std::vector<DenseVector> nullspace_basis_compact(const CompactAbaffian& h,
                                                 const Permutation& col_perm, std::size_t rank);

/// One member of the solution variety: x + H^T q. For compatible systems
/// every choice of q yields a solution.
DenseVector solution_variety_sample(const DenseVector& x, const DenseMatrix& final_h,
                                    const DenseVector& q);

}  // namespace abslin
