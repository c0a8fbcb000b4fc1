#include <doctest.h>

#include <cmath>
#include <random>

#include "abslin/generators.hpp"
#include "abslin/ilu.hpp"
#include "abslin/oracle.hpp"

using namespace abslin;
using namespace abslin::oracle;

TEST_CASE("gauss_solve basics") {
    const GaussResult id = gauss_solve(DenseMatrix::identity(2), {1, 2});
    REQUIRE(id.status == GaussStatus::Solved);
    CHECK(id.x == DenseVector{1, 2});

    // frozen anchor: hand elimination of the 3x3 distance matrix
    const GaussResult mf = gauss_solve(DenseMatrix{{0, 1, 2}, {1, 0, 1}, {2, 1, 0}}, {1, 2, 3});
    REQUIRE(mf.status == GaussStatus::Solved);
    CHECK(std::fabs(mf.x[0] - 1.5) <= 1e-14);
    CHECK(std::fabs(mf.x[1] - 0.0) <= 1e-14);
    CHECK(std::fabs(mf.x[2] - 0.5) <= 1e-14);

    const GaussResult bad = gauss_solve(DenseMatrix{{1, 0}, {1, 0}}, {1, 2});
    CHECK(bad.status == GaussStatus::Incompatible);

    const GaussResult rd = gauss_solve(DenseMatrix{{1, 0}, {2, 0}}, {1, 2});
    CHECK(rd.status == GaussStatus::RankDeficient);
    CHECK(rd.rank == 1);
    CHECK(rd.x == DenseVector{1, 0});

    CHECK_THROWS_AS(gauss_solve(DenseMatrix{{1}, {1}}, {1, 1}), DimensionError);
}

TEST_CASE("gauss_solve handles wide systems with free variables") {
    const DenseMatrix a{{1, 2, 3}, {0, 0, 1}};
    const GaussResult res = gauss_solve(a, {6, 1});
    REQUIRE(res.status == GaussStatus::Solved);
    CHECK(residual_norm(a, res.x, {6, 1}) <= 1e-12);
}

TEST_CASE("residual_norm") {
    const DenseMatrix a{{0, 1, 2}, {1, 0, 1}, {2, 1, 0}};
    CHECK(residual_norm(a, {1.5, 0, 0.5}, {1, 2, 3}) <= 1e-12);
    CHECK(residual_norm(a, {0, 0, 0}, {3, 0, 4}) == 5.0);
    CHECK_THROWS_AS(residual_norm(a, {1.0, 2.0}, {1, 2, 3}), DimensionError);
}

TEST_CASE("rank_oracle") {
    CHECK(rank_oracle(DenseMatrix::identity(3)) == 3);
    CHECK(rank_oracle(DenseMatrix{{1, 0}, {2, 0}}) == 1);
    CHECK(rank_oracle(DenseMatrix{{0, 1, 2}, {1, 0, 1}, {2, 1, 0}}) == 3);
    CHECK(rank_oracle(DenseMatrix(4, 4, 0.0)) == 0);
}

TEST_CASE("check_implicit_factorization detects violations") {
    const auto ok = check_implicit_factorization(DenseMatrix::identity(3),
                                                 DenseMatrix::identity(3), 1e-10);
    CHECK(ok.passed);
    CHECK(ok.max_violation == 0.0);

    // upper-triangle fault
    const auto bad = check_implicit_factorization(DenseMatrix::identity(2),
                                                  DenseMatrix{{1, 1}, {0, 1}}, 1e-10);
    CHECK_FALSE(bad.passed);

    // zero diagonal
    const auto zd = check_implicit_factorization(DenseMatrix::identity(2),
                                                 DenseMatrix{{0, 0}, {1, 1}}, 1e-10);
    CHECK_FALSE(zd.passed);
}

TEST_CASE("check_abaffian_structure is exact") {
    CHECK(check_abaffian_structure(DenseMatrix::identity(3), 0).passed);
    CHECK(check_abaffian_structure(DenseMatrix{{0, 0}, {3.7, 1}}, 1).passed);
    CHECK_FALSE(check_abaffian_structure(DenseMatrix{{1e-16, 0}, {3.7, 1}}, 1).passed);
    CHECK_FALSE(check_abaffian_structure(DenseMatrix{{0, 0}, {3.7, 1.0 + 1e-15}}, 1).passed);
}

TEST_CASE("check_nullspace_relations") {
    // after one implicit LU step on I2
    const DenseMatrix h2{{0, 0}, {0, 1}};
    DenseMatrix processed(1, 2, 0.0);
    processed(0, 0) = 1.0;
    DenseMatrix used_w(2, 1, 0.0);
    used_w(0, 0) = 1.0;
    CHECK(check_nullspace_relations(h2, processed, used_w, 1e-10).passed);

    DenseMatrix corrupted = h2;
    corrupted(0, 1) = 0.5;
    CHECK_FALSE(check_nullspace_relations(corrupted, processed, used_w, 1e-10).passed);
}

TEST_CASE("oracle agrees with the pivoted solvers on random systems") {
    std::mt19937_64 rng(83);
    for (int t = 0; t < 20; ++t) {
        const std::size_t n = 2 + static_cast<std::size_t>(rng() % 20);
        DenseMatrix a(1, 1);
        GaussResult filter;
        do {
            a = random_matrix(n, n, rng);
            filter = gauss_solve(a, DenseVector(n, 1.0));
        } while (filter.status != GaussStatus::Solved || filter.pivot_ratio > 1e8);
        const DenseVector b = random_vector(n, rng);
        const GaussResult ref = gauss_solve(a, b);
        REQUIRE(ref.status == GaussStatus::Solved);
        CHECK(residual_norm(a, ref.x, b) <= 1e-8 * (1.0 + norm2(b)));

        const SolveReport pc = ilu_pivot_col(a, b);
        REQUIRE(pc.success());
        const double scale = norm_inf(ref.x);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(std::fabs(pc.solution[i] - ref.x[i]) <= 1e-7 * scale);
    }
}

TEST_CASE("rank_oracle matches solver ranks on crafted deficient systems") {
    for (std::size_t r : {1ul, 3ul, 6ul}) {
        const GeneratedSystem g = gen_rank_deficient(8, 11, r, 1234 + r);
        CHECK(rank_oracle(g.a) == r);
        const SolveReport pr = ilu_pivot_row(g.a, g.b);
        REQUIRE(pr.success());
        CHECK(pr.rank == r);
    }
}
