#pragma once

// The general unscaled recursion: one equation eliminated per step through a
// projection (Abaffian) matrix, with pluggable parameter vectors. The
// implicit LU solvers are the specialization x1 = 0, H1 = I, z = w = e_i;
// this module keeps the recursion fully general for arbitrary starting data
// and parameter rules.

#include <functional>

#include "abslin/core.hpp"
#include "abslin/report.hpp"

namespace abslin {

struct StrategyChoice {
    DenseVector z;  // search parameter; z^T H a must stay away from zero
    DenseVector w;  // projection parameter; w^T H a must stay away from zero
};

/// Rule producing the parameter vectors at iteration i (0-based) given the
/// current projection matrix and the equation row being processed.
using ParameterStrategy =
    std::function<StrategyChoice(std::size_t i, const DenseMatrix& h, const DenseVector& a)>;

/// z_i = w_i = e_i, the implicit LU parameter choice.
ParameterStrategy implicit_lu_strategy();

/// H - (H a)(w^T H) / (w^T H a). The result annihilates a. Throws
/// DegenerateUpdate when |w^T H a| <= ep1.
DenseMatrix abaffian_update(const DenseMatrix& h, const DenseVector& a, const DenseVector& w,
                            double ep1 = 0.0);

/// p = H^T z.
DenseVector search_vector(const DenseMatrix& h, const DenseVector& z);

/// tau / (a^T p). Throws DegenerateStep when a^T p is exactly zero.
double step_size(double tau, const DenseVector& a, const DenseVector& p);

/// Classify a row from its projected value s = H a and residual
/// tau = a^T x - b: Solved when ||s|| > ep1, otherwise Dependent when
/// |tau| <= ep2 and Incompatible when not.
RowStatus compatibility_check(const DenseVector& s, double tau, const Tolerances& tol);

/// Run the recursion over all rows of a. Dependent rows leave x and H
/// untouched; an incompatible row stops processing and is reported in the
/// outcome. Throws DegenerateUpdate if the strategy returns a degenerate z
/// or w on a row that is not dependent.
SolveReport abs_solve(const DenseMatrix& a, const DenseVector& b,
                      const ParameterStrategy& strategy, const DenseVector& x1,
                      const DenseMatrix& h1, Tolerances tol = {},
                      TraceLevel trace = TraceLevel::Basic);

}  // namespace abslin
