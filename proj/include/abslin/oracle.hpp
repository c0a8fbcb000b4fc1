#pragma once

// Independent reference solver and property checkers. Everything here is
// implemented without touching the solver modules, so agreement between the
// two is meaningful evidence.

#include <cstddef>
#include <string>

#include "abslin/core.hpp"

namespace abslin::oracle {

enum class GaussStatus : int { Solved, RankDeficient, Incompatible };

struct GaussResult {
    GaussStatus status = GaussStatus::Solved;
    /// Basic solution; free variables are zero in eliminated order.
    /// Empty when the system is incompatible.
    DenseVector x;
    std::size_t rank = 0;
    /// Ratio of largest to smallest absolute pivot, a cheap conditioning
    /// proxy used to filter random test systems.
    double pivot_ratio = 0.0;
};

/// Textbook Gaussian elimination with partial row pivoting, m <= n.
GaussResult gauss_solve(const DenseMatrix& a, const DenseVector& b);

/// ||A x - b||_2.
double residual_norm(const DenseMatrix& a, const DenseVector& x, const DenseVector& b);

/// Numerical rank via elimination with pivot threshold 1e-10 * ||A||_inf.
std::size_t rank_oracle(const DenseMatrix& a);

struct PropertyReport {
    std::string name;
    bool passed = false;
    double max_violation = 0.0;
    std::string context;
};

/// A_indep * P must be lower triangular with nonzero diagonal: strict upper
/// entries at most tol_struct * max|entry|, diagonal entries above it.
PropertyReport check_implicit_factorization(const DenseMatrix& a_indep, const DenseMatrix& p,
                                            double tol_struct);

/// After i eliminations the projection matrix must have rows 0..i-1 exactly
/// zero and the trailing (n-i) x (n-i) block exactly the identity.
PropertyReport check_abaffian_structure(const DenseMatrix& h, std::size_t i);

/// Null-space containments: ||H_next a_k|| <= tol_struct * ||a_k|| for every
/// processed independent row (rows of processed_rows) and
/// ||H_next^T w_k|| <= tol_struct for every used parameter (columns of
/// used_w).
PropertyReport check_nullspace_relations(const DenseMatrix& h_next,
                                         const DenseMatrix& processed_rows,
                                         const DenseMatrix& used_w, double tol_struct);

}  // namespace abslin::oracle
