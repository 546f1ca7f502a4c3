#include <doctest.h>

#include <cmath>
#include <vector>

#include "levysim/coupling.hpp"
#include "levysim/covariance_struct.hpp"
#include "levysim/errors.hpp"
#include "test_util.hpp"

using namespace levysim;

namespace {

double max_abs(const Vector& v) {
    double out = 0.0;
    for (double x : v) out = std::max(out, std::abs(x));
    return out;
}

Vector diff(const LevyVector& a, const LevyVector& b) { return (a - b).a; }

}  // namespace

TEST_CASE("coupled draws consume V then all K modes") {
    NormalStream s = open_stream({4, 2});
    const CoupledDraws d = draw_coupled(3, 0.5, 50, s);
    CHECK(s.draws() == 3 + 2 * 3 * 50);
    CHECK(d.coeffs.n == 50);

    NormalStream t = open_stream({4, 2});
    CoupledDraws reused;
    draw_coupled(3, 0.5, 50, t, reused);
    CHECK(reused.increment.dw == d.increment.dw);
    CHECK(reused.coeffs.x == d.coeffs.x);
    CHECK(reused.coeffs.y == d.coeffs.y);

    NormalStream e = open_stream({1, 1});
    CHECK_THROWS_AS(draw_coupled(0, 1.0, 10, e), ParameterError);
    CHECK_THROWS_AS(draw_coupled(2, 1.0, 0, e), ParameterError);
}

TEST_CASE("remainders decompose the K-mode area") {
    for (std::size_t m : {2u, 3u, 5u}) {
        NormalStream s = open_stream({20210121, m});
        const std::size_t K = 200;
        const CoupledDraws d = draw_coupled(m, 0.8, K, s);
        const LevyVector full = truncated_area(d.increment, d.coeffs);

        const std::vector<std::size_t> levels{7, 1, K, 30};
        const auto out = couple_levels(d, levels);
        REQUIRE(out.size() == levels.size());
        for (std::size_t l = 0; l < levels.size(); ++l) {
            const CoupledLevel& lv = out[l];
            CHECK(lv.n == levels[l]);
            CHECK(max_abs(diff(coupled_truth(lv), full)) <= 1e-13);

            const TailConstants tail = tail_constants(lv.n, K);
            CHECK(lv.tail.alpha == doctest::Approx(tail.alpha).epsilon(1e-14).scale(1e-300));

            // FS differs from the truth by R2 only; IA by R2 - tail2(Psi2).
            CHECK(max_abs(diff(coupled_truth(lv) - coupled_fs(lv, d.increment), lv.r2)) <= 1e-14);
            const LevyVector ia_gap = coupled_truth(lv) - coupled_ia(lv, d.increment);
            const LevyVector expect = lv.r2 - tail2(d.increment.h, m, lv.tail, lv.psi2);
            CHECK(max_abs(diff(ia_gap, expect)) <= 1e-14);

            if (lv.n == K) {
                CHECK(max_abs(lv.r1.a) == 0.0);
                CHECK(max_abs(lv.r2.a) == 0.0);
                CHECK(max_abs(diff(coupled_ia(lv, d.increment), coupled_truth(lv))) == 0.0);
                continue;
            }

            // Sigma and Psi2 agree with an independent rebuild from the modes.
            std::vector<Vector> xs;
            for (std::size_t k = lv.n + 1; k <= K; ++k)
                xs.emplace_back(d.coeffs.x.begin() + (k - 1) * m, d.coeffs.x.begin() + k * m);
            const FlatMatrix sigma = sigma2_truncated(d.increment.h, m, lv.n, K, xs).matrix;
            CHECK(testutil::max_abs_diff(sigma.data, lv.sigma2.data) <= 1e-14);
            const FlatMatrix root = sym_psd_sqrt(sigma);
            for (std::size_t r = 0; r < pair_count(m); ++r) {
                double v = 0.0;
                for (std::size_t c = 0; c < pair_count(m); ++c) v += root(r, c) * lv.psi2[c];
                CHECK(v == doctest::Approx(lv.r2.a[r]).epsilon(1e-9).scale(1e-6));
            }
        }
    }
}

TEST_CASE("coupling options and preconditions") {
    NormalStream s = open_stream({8, 0});
    const CoupledDraws d = draw_coupled(3, 1.0, 100, s);
    const std::vector<std::size_t> one{5};
    const auto lean = couple_levels(d, one, CoupleOptions{false});
    CHECK(lean.front().psi2.empty());
    CHECK(lean.front().sigma2.data.empty());
    CHECK_THROWS_AS(coupled_ia(lean.front(), d.increment), ParameterError);

    const std::vector<std::size_t> too_far{101};
    CHECK_THROWS_AS(couple_levels(d, too_far), ParameterError);
    const std::vector<std::size_t> zero{0};
    CHECK_THROWS_AS(couple_levels(d, zero), ParameterError);

    NormalStream t = open_stream({8, 1});
    const CoupledDraws scalar = draw_coupled(1, 1.0, 10, t);
    CHECK_THROWS_AS(couple_levels(scalar, one), DimensionError);
}
