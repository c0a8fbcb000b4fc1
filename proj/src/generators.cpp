#include "abslin/generators.hpp"

#include <algorithm>
#include <cmath>

namespace abslin {

DenseMatrix gen_micchelli_fiedler(std::size_t m, std::size_t n) {
    DenseMatrix a(m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            a(i, j) = static_cast<double>(i > j ? i - j : j - i);
    return a;
}

DenseMatrix gen_squared_distance(std::size_t m, std::size_t n) {
    DenseMatrix a(m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double d = static_cast<double>(i > j ? i - j : j - i);
            a(i, j) = d * d;
        }
    return a;
}

DenseVector index_rhs(std::size_t m) {
    DenseVector b(m);
    for (std::size_t k = 0; k < m; ++k) b[k] = static_cast<double>(k + 1);
    return b;
}

double uniform_symmetric(std::mt19937_64& rng) {
    const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1)
    return 2.0 * unit - 1.0;
}

DenseMatrix random_matrix(std::size_t m, std::size_t n, std::mt19937_64& rng) {
    DenseMatrix a(m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = uniform_symmetric(rng);
    return a;
}

DenseVector random_vector(std::size_t n, std::mt19937_64& rng) {
    DenseVector v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = uniform_symmetric(rng);
    return v;
}

GeneratedSystem gen_rank_deficient(std::size_t m, std::size_t n, std::size_t r,
                                   std::uint64_t seed) {
    if (r < 1 || r > std::min(m, n))
        throw ParamError("gen_rank_deficient: need 1 <= r <= min(m, n)");
    std::mt19937_64 rng(seed);
    const DenseMatrix bfac = random_matrix(m, r, rng);
    const DenseMatrix cfac = random_matrix(r, n, rng);
    DenseMatrix a(m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < r; ++k) acc += bfac(i, k) * cfac(k, j);
            a(i, j) = acc;
        }
    const DenseVector x_true = random_vector(n, rng);
    return GeneratedSystem{a, matvec(a, x_true)};
}

}  // namespace abslin
