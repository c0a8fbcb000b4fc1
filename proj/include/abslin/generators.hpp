#pragma once

// Test-matrix generators and the deterministic random helpers behind them.
// Generated data is a pure function of the arguments: the same (m, n, seed)
// always produces identical bytes, independent of platform.

#include <cstdint>
#include <random>

#include "abslin/core.hpp"

namespace abslin {

/// Distance matrix a_ij = |i - j| (identical under 0- or 1-based indexing).
DenseMatrix gen_micchelli_fiedler(std::size_t m, std::size_t n);

/// Squared-distance matrix a_ij = |i - j|^2.
DenseMatrix gen_squared_distance(std::size_t m, std::size_t n);

/// Right-hand side b_k = k with 1-based values: (1, 2, ..., m).
DenseVector index_rhs(std::size_t m);

struct GeneratedSystem {
    DenseMatrix a;
    DenseVector b;  // compatible by construction
};

/// A = B C with random full-rank factors B (m x r) and C (r x n), paired
/// with b = A x_true for a random x_true so the system is compatible.
/// Throws ParamError unless 1 <= r <= min(m, n).
GeneratedSystem gen_rank_deficient(std::size_t m, std::size_t n, std::size_t r,
                                   std::uint64_t seed);

/// Uniform draw from [-1, 1) built directly from the generator's bits
/// (distribution classes are implementation-defined).
double uniform_symmetric(std::mt19937_64& rng);

DenseMatrix random_matrix(std::size_t m, std::size_t n, std::mt19937_64& rng);
DenseVector random_vector(std::size_t n, std::mt19937_64& rng);

}  // namespace abslin
