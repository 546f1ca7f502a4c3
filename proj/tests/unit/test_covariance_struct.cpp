#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "levysim/covariance_struct.hpp"
#include "levysim/error_model.hpp"
#include "levysim/errors.hpp"
#include "test_util.hpp"

using namespace levysim;
using doctest::Approx;

TEST_CASE("hand-evaluated conditional covariances") {
    const std::vector<double> x2{1.0, 2.0};
    CHECK(cond_cov_direct(x2).matrix.data == Vector{5.0});
    CHECK(cond_cov_blocks(x2).matrix.data == Vector{5.0});

    const std::vector<double> ones{1.0, 1.0, 1.0};
    const Vector expect{2, 1, -1, 1, 2, 1, -1, 1, 2};
    CHECK(cond_cov_direct(ones).matrix.data == expect);
    CHECK(cond_cov_blocks(ones).matrix.data == expect);

    const std::vector<double> zero(5, 0.0);
    CHECK(frobenius_norm(cond_cov_direct(zero).matrix) == 0.0);
    CHECK(frobenius_norm(cond_cov_blocks(zero).matrix) == 0.0);

    CHECK_THROWS_AS(cond_cov_direct(std::vector<double>{1.0}), DimensionError);
    CHECK_THROWS_AS(cond_cov_blocks(std::vector<double>{}), DimensionError);
}

TEST_CASE("block assembly equals the factored form") {
    std::mt19937_64 rng(31);
    for (std::size_t m = 2; m <= 8; ++m) {
        const std::size_t M = pair_count(m);
        for (int t = 0; t < 100; ++t) {
            const auto x = testutil::normals(rng, m);
            const FlatMatrix d = cond_cov_direct(x).matrix;
            const FlatMatrix b = cond_cov_blocks(x).matrix;
            REQUIRE(d.rows == M);
            CHECK(testutil::max_abs_diff(d.data, b.data) <= 1e-12);

            FlatMatrix gram(m, m);
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < m; ++j) gram(i, j) = x[i] * x[j];
            CHECK(testutil::max_abs_diff(cond_cov_from_gram(gram).matrix.data, d.data) <= 1e-12);

            for (std::size_t r = 0; r < M; ++r) {
                const PairIndex p = index_to_pair(r, m);
                CHECK(b(r, r) == Approx(x[p.i] * x[p.i] + x[p.j] * x[p.j]));
                std::size_t nonzero = 0;
                for (std::size_t c = 0; c < M; ++c) {
                    CHECK(b(r, c) == b(c, r));
                    if (c != r && b(r, c) != 0.0) ++nonzero;
                }
                CHECK(nonzero == 2 * m - 4);
            }

            Eigen::Map<const Eigen::MatrixXd> e(d.data.data(), M, M);
            const double lo = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(e).eigenvalues().minCoeff();
            CHECK(lo >= -1e-10);
        }
    }
}

TEST_CASE("truncated conditional covariance and its mean") {
    const std::vector<Vector> none;
    CHECK(frobenius_norm(sigma2_truncated(1.0, 3, 4, 4, none).matrix) == 0.0);
    CHECK(sigma2_truncated(1.0, 3, 4, 4, none).matrix.rows == 3);

    const std::vector<Vector> single{{1.0, 2.0}};
    CHECK(sigma2_truncated(1.0, 2, 1, 2, single).matrix.data[0] == Approx(0.031662869888230554).epsilon(1e-14));

    CHECK(sigma2_inf(1.0, 1, 2) == Approx(0.032672741512164448).epsilon(1e-14));
    for (std::size_t n : {1u, 3u, 17u}) {
        const double fs = l2_error_fs_exact(0.3, n);
        CHECK(sigma2_inf(0.3, n, 4) == Approx(fs * fs).epsilon(1e-14));
    }
    CHECK(sigma2_inf(2.0, 2, 3) == Approx(4.0 * sigma2_inf(1.0, 2, 3)).epsilon(1e-15));

    CHECK(sigma2_row_deviation(2, 1.0, 1) == Approx(2.1128221410669398e-4).epsilon(1e-12));
    CHECK(sigma2_frobenius_deviation(2, 1.0, 1) == Approx(2.1128221410669398e-4).epsilon(1e-12));
    CHECK(sigma2_row_deviation(3, 1.0, 2) == Approx(7.6314362065876865e-5).epsilon(1e-12));
    for (std::size_t m = 2; m <= 6; ++m)
        CHECK(sigma2_frobenius_deviation(m, 0.5, 3) / sigma2_row_deviation(m, 0.5, 3) ==
              Approx(static_cast<double>(pair_count(m))).epsilon(1e-14));

    CHECK_THROWS_AS(sigma2_truncated(1.0, 2, 3, 2, none), ParameterError);
    CHECK_THROWS_AS(sigma2_truncated(1.0, 2, 1, 3, single), DimensionError);
    CHECK_THROWS_AS(sigma2_inf(1.0, 0, 2), ParameterError);
}
