#pragma once

// Inner-loop kernels for the implicit LU solvers, in two flavors: a serial
// reference and an OpenMP-parallel version. Both operate on the leading
// block of the Abaffian, viewed as a row-major buffer with leading
// dimension ld: entry (j, c) sits at buf[j * ld + c]. At processing stage
// i the block occupies columns [0, i); everything to the right of it is an
// implicit (or, in explicit storage, materialized) identity.
//
// Every output element is accumulated by a single thread in fixed
// left-to-right order, so the two flavors produce bit-identical results.

#include <cstddef>

#include "abslin/core.hpp"
#include "abslin/report.hpp"

namespace abslin::kernels {

namespace serial {

/// Projected row s = H a restricted to positions [stage, n):
/// s[j] = sum_{c < stage} buf(j,c) * a[c] + a[j]. Positions below stage are
/// left untouched.
void project_tail(const double* buf, std::size_t ld, std::size_t stage, std::size_t n,
                  const double* arow, double* s, WorkCounters& wc);

/// Rank-one block update H <- H - s e_i^T H / d restricted to rows
/// (stage, n) and columns [0, stage], followed by zeroing row `stage` of the
/// block. prow must point at the pivot row values for columns [0, stage]
/// with prow[stage] == 1.
void update_block(double* buf, std::size_t ld, std::size_t stage, std::size_t n,
                  const double* prow, const double* s, double d, WorkCounters& wc);

/// Row-pivot candidate values vals[j] = e_stage^T H a_j for rows
/// j in [row_begin, row_end) of a.
void pivot_row_values(const double* buf, std::size_t ld, std::size_t stage,
                      const DenseMatrix& a, std::size_t row_begin, std::size_t row_end,
                      double* vals);

}  // namespace serial

namespace par {

void project_tail(const double* buf, std::size_t ld, std::size_t stage, std::size_t n,
                  const double* arow, double* s, WorkCounters& wc);

void update_block(double* buf, std::size_t ld, std::size_t stage, std::size_t n,
                  const double* prow, const double* s, double d, WorkCounters& wc);

void pivot_row_values(const double* buf, std::size_t ld, std::size_t stage,
                      const DenseMatrix& a, std::size_t row_begin, std::size_t row_end,
                      double* vals);

}  // namespace par

}  // namespace abslin::kernels
