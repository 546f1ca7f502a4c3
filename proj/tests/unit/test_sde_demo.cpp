#include <doctest.h>

#include <cmath>

#include "levysim/errors.hpp"
#include "levysim/sde_demo.hpp"

using namespace levysim;

namespace {

DemoConfig small_config() {
    DemoConfig cfg;
    cfg.h_list = {0.25, 0.125, 0.0625};
    cfg.paths = 200;
    cfg.K = 400;
    cfg.seed = 42;
    return cfg;
}

}  // namespace

TEST_CASE("exact integrals make Milstein exact") {
    DemoConfig cfg = small_config();
    cfg.K = 40;
    cfg.paths = 20;
    cfg.fixed_n = 40;
    const DemoResult r = run_demo(cfg);
    REQUIRE(r.rows.size() == 3);
    for (const DemoRow& row : r.rows) {
        CHECK(row.rmse_milstein_ia <= 1e-13);
        CHECK(row.rmse_milstein_fs <= 1e-13);
        CHECK(row.rmse_euler > 0.01);
    }
    CHECK(std::isnan(r.slope_milstein_ia));
}

TEST_CASE("error shrinks as the truncation level grows") {
    double prev_ms = INFINITY;
    double prev_se = 0.0;
    for (std::size_t n : {1u, 4u, 16u}) {
        DemoConfig cfg = small_config();
        cfg.fixed_n = n;
        const DemoResult r = run_demo(cfg);
        const DemoRow& row = r.rows.front();
        const double ms = row.rmse_milstein_ia * row.rmse_milstein_ia;
        CHECK(ms <= prev_ms + 3.0 * std::hypot(row.se_milstein_ia, prev_se));
        prev_ms = ms;
        prev_se = row.se_milstein_ia;
        CHECK(row.n == n);
    }
}

TEST_CASE("schedule and reproducibility") {
    const DemoResult a = run_demo(small_config());
    const DemoResult b = run_demo(small_config());
    REQUIRE(a.rows.size() == 3);
    for (std::size_t k = 0; k < a.rows.size(); ++k) {
        CHECK(a.rows[k].n >= 1);
        CHECK(a.rows[k].rmse_milstein_ia == b.rows[k].rmse_milstein_ia);
        CHECK(a.rows[k].rmse_euler == b.rows[k].rmse_euler);
    }
    CHECK(a.slope_euler == b.slope_euler);
    CHECK(a.slope_euler > 0.2);
}

TEST_CASE("invalid demo configurations") {
    DemoConfig two = small_config();
    two.h_list = {0.5, 0.25};
    CHECK_THROWS_AS(run_demo(two), ParameterError);

    DemoConfig uneven = small_config();
    uneven.h_list = {0.3, 0.125, 0.0625};
    CHECK_THROWS_AS(run_demo(uneven), ParameterError);

    DemoConfig none = small_config();
    none.paths = 0;
    CHECK_THROWS_AS(run_demo(none), ParameterError);

    DemoConfig beyond = small_config();
    beyond.fixed_n = beyond.K + 1;
    CHECK_THROWS_AS(run_demo(beyond), ParameterError);

    DemoConfig shallow = small_config();
    shallow.K = 50;
    CHECK_THROWS_AS(run_demo(shallow), ParameterError);

    DemoConfig horizon = small_config();
    horizon.T = 0.0;
    CHECK_THROWS_AS(run_demo(horizon), ParameterError);
}
