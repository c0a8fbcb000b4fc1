#pragma once

// Result types shared by the general recursion and the implicit LU solvers.

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "abslin/core.hpp"

namespace abslin {

class CompactAbaffian;

/// ep1 is the dependency control parameter (declares a projected row
/// numerically zero), ep2 the residual control parameter (separates
/// dependent-and-compatible from incompatible).
struct Tolerances {
    double ep1 = 1e-7;
    double ep2 = 1e-7;
};

enum class RowStatus : std::uint8_t { Solved, Dependent, Incompatible };

enum class Outcome : std::uint8_t { Success, Incompatible, SingularPrincipalMinor };

/// Floating-point work performed in the projection/solution updates.
/// h_* counters cover the Abaffian update, x_mults the solution update,
/// s_mults the projected-row computation.
struct WorkCounters {
    unsigned long long h_mults = 0;
    unsigned long long h_divs = 0;
    unsigned long long h_writes = 0;
    unsigned long long x_mults = 0;
    unsigned long long s_mults = 0;

    unsigned long long mult_count() const noexcept { return h_mults + x_mults; }
};

enum class TraceLevel : std::uint8_t {
    None,   // no trace
    Basic,  // search vectors and final Abaffian
    Full    // additionally one Abaffian snapshot per processed row
};

struct TraceStep {
    std::size_t row = 0;  // processing position
    RowStatus status = RowStatus::Solved;
    DenseVector s;   // projected row H_i a_i
    double d = 0.0;  // denominator used by the update
    double alpha = 0.0;
    DenseVector p;  // search vector (Solved rows only)
};

/// Per-iteration record of a run. Everything here is expressed in
/// processing coordinates (after any pivoting interchanges), which is where
/// the structural properties of the recursion hold.
struct AbsTrace {
    std::vector<TraceStep> steps;
    DenseMatrix p_matrix;  // n x t, columns are the search vectors of solved rows
    DenseMatrix final_h;
    std::vector<DenseMatrix> h_snapshots;  // TraceLevel::Full only, one per solved row
};

/// Everything a solver reports back. The solution is always expressed in the
/// original variable ordering; row_status follows processing order (equal to
/// equation order except under row pivoting, where `permutation` maps
/// processing slots back to original equation indices).
struct SolveReport {
    DenseVector solution;
    std::size_t rank = 0;
    std::vector<RowStatus> row_status;
    Permutation permutation;
    WorkCounters counters;
    std::size_t nullspace_dim = 0;
    Outcome outcome = Outcome::Success;
    /// Original index of the equation that failed; meaningful unless Success.
    std::size_t failing_row = 0;
    /// Mirror of the reference convention: number of dependent rows on
    /// success, -(i+1) when processing position i proved incompatible.
    int iflag = 0;
    std::optional<DenseMatrix> final_h;  // original coordinates
    /// Compact-mode solves keep their block storage here (processing
    /// coordinates) when the final Abaffian was requested, so the null-space
    /// basis can be assembled without materializing H.
    std::shared_ptr<const CompactAbaffian> compact_h;
    std::optional<AbsTrace> trace;

    bool success() const noexcept { return outcome == Outcome::Success; }
    unsigned long long mult_count() const noexcept { return counters.mult_count(); }
};

}  // namespace abslin
