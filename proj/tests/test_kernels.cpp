#include <doctest.h>

#include <random>
#include <vector>

#include "abslin/generators.hpp"
#include "abslin/kernels.hpp"

using namespace abslin;

// The OpenMP kernels must reproduce the serial reference bit for bit:
// every output element is accumulated by one thread in fixed order.

TEST_CASE("project_tail: parallel flavor matches serial reference exactly") {
    std::mt19937_64 rng(101);
    for (std::size_t n : {4u, 17u, 64u}) {
        const std::size_t ld = n;
        std::vector<double> buf(n * ld);
        for (double& v : buf) v = uniform_symmetric(rng);
        const DenseVector arow = random_vector(n, rng);
        for (std::size_t stage : {std::size_t{0}, std::size_t{1}, n / 2, n - 1}) {
            DenseVector s1(n, 0.0), s2(n, 0.0);
            WorkCounters w1, w2;
            kernels::serial::project_tail(buf.data(), ld, stage, n, arow.data(), s1.data(), w1);
            kernels::par::project_tail(buf.data(), ld, stage, n, arow.data(), s2.data(), w2);
            CHECK(s1 == s2);
            CHECK(w1.s_mults == (n - stage) * stage);
            CHECK(w1.s_mults == w2.s_mults);
        }
    }
}

TEST_CASE("update_block: parallel flavor matches serial reference exactly") {
    std::mt19937_64 rng(202);
    const std::size_t n = 33;
    for (std::size_t stage : {std::size_t{0}, std::size_t{5}, std::size_t{20}, n - 1}) {
        std::vector<double> buf(n * n);
        for (double& v : buf) v = uniform_symmetric(rng);
        std::vector<double> buf2 = buf;
        DenseVector s = random_vector(n, rng);
        DenseVector prow(stage + 1);
        for (std::size_t c = 0; c < stage; ++c) prow[c] = buf[stage * n + c];
        prow[stage] = 1.0;
        const double d = 0.7;

        WorkCounters w1, w2;
        kernels::serial::update_block(buf.data(), n, stage, n, prow.data(), s.data(), d, w1);
        kernels::par::update_block(buf2.data(), n, stage, n, prow.data(), s.data(), d, w2);
        CHECK(buf == buf2);

        const unsigned long long block = (n - stage - 1) * (stage + 1);
        CHECK(w1.h_mults == block);
        CHECK(w1.h_divs == block);
        CHECK(w1.h_writes == block);
        CHECK(w2.h_writes == block);

        // pivot row zeroed through column `stage`
        for (std::size_t c = 0; c <= stage; ++c) CHECK(buf[stage * n + c] == 0.0);
    }
}

TEST_CASE("pivot_row_values: parallel flavor matches serial reference exactly") {
    std::mt19937_64 rng(303);
    const std::size_t n = 21, m = 13;
    const DenseMatrix a = random_matrix(m, n, rng);
    std::vector<double> buf(n * n);
    for (double& v : buf) v = uniform_symmetric(rng);
    for (std::size_t stage : {std::size_t{0}, std::size_t{4}, m - 1}) {
        std::vector<double> v1(m - stage), v2(m - stage);
        kernels::serial::pivot_row_values(buf.data(), n, stage, a, stage, m, v1.data());
        kernels::par::pivot_row_values(buf.data(), n, stage, a, stage, m, v2.data());
        CHECK(v1 == v2);
    }
}
