#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <random>
#include <vector>

#include "levysim/error_model.hpp"
#include "levysim/errors.hpp"
#include "levysim/parallel.hpp"
#include "levysim/validation.hpp"

using namespace levysim;

TEST_CASE("report rules") {
    CHECK(within_se("a", 1.0, 0.1, 1.25, 3.0).pass);
    CHECK_FALSE(within_se("a", 1.0, 0.1, 1.35, 3.0).pass);
    CHECK(below_bound("b", 1.2, 0.1, 1.0, 3.0).pass);
    CHECK_FALSE(below_bound("b", 1.4, 0.1, 1.0, 3.0).pass);
    CHECK(absolute("c", 1.0 + 1e-13, 1.0, 1e-12).pass);
    CHECK_FALSE(absolute("c", 1.0 + 1e-11, 1.0, 1e-12).pass);
    CHECK(in_interval("d", -1.0, -1.15, -0.85).pass);
    CHECK_FALSE(in_interval("d", -0.5, -1.15, -0.85).pass);
    CHECK_FALSE(within_se("nan", NAN, 0.1, 0.0, 3.0).pass);
    CHECK(within_se("a", 1.0, 0.1, 1.25, 3.0).rule_text().find("3") != std::string::npos);
}

TEST_CASE("log-log slope fit") {
    const std::vector<double> xs{1, 2, 4, 8, 16};
    CHECK(fit_slope(xs, xs) == doctest::Approx(1.0).epsilon(1e-14));
    std::vector<double> inv;
    for (double x : xs) inv.push_back(1.0 / x);
    CHECK(fit_slope(xs, inv) == doctest::Approx(-1.0).epsilon(1e-14));

    std::mt19937_64 rng(1);
    std::normal_distribution<double> noise(0.0, 0.01);
    std::vector<double> noisy;
    for (double x : xs) noisy.push_back(3.0 * std::pow(x, -0.5) * (1.0 + noise(rng)));
    const double s = fit_slope(xs, noisy);
    CHECK(s >= -0.55);
    CHECK(s <= -0.45);

    std::vector<double> ns;
    std::vector<double> exact;
    for (std::size_t n = 1; n <= 64; n *= 2) {
        ns.push_back(static_cast<double>(n));
        exact.push_back(l2_error_fs_exact(1.0, n));
    }
    const double fs_slope = fit_slope(ns, exact);
    CHECK(fs_slope >= -0.55);
    CHECK(fs_slope <= -0.45);

    CHECK_THROWS_AS(fit_slope(std::vector<double>{1, 2}, std::vector<double>{1, 2}), ParameterError);
    CHECK_THROWS_AS(fit_slope(std::vector<double>{1, 2, 3}, std::vector<double>{1, 0, 2}), ParameterError);
    CHECK_THROWS_AS(fit_slope(std::vector<double>{1, 2, 3}, std::vector<double>{1, 2}), DimensionError);
}

TEST_CASE("coupled FS error matches its closed form") {
    const McReport r = coupled_fs_error(1.0, 1, 10000, 1000, 20210121);
    CHECK(r.pass);
    CHECK(r.target == doctest::Approx(0.18075602759566401).epsilon(1e-14));
    CHECK(r.std_error > 0.0);
    CHECK_FALSE(r.note.empty());
    CHECK_THROWS_AS(coupled_fs_error(1.0, 2, 150, 1000, 1), ParameterError);
}

TEST_CASE("coupled IA error stays below its bound") {
    const IaErrorReport r = coupled_ia_error(2, 1.0, 1, 1000, 2000, 20210121);
    CHECK(r.max_entry.pass);
    CHECK(r.frobenius.pass);
    CHECK(r.max_entry.target == doctest::Approx(0.080415299029355708).epsilon(1e-13));
    CHECK(r.max_entry.estimate > 0.0);

    const IaErrorReport r3 = coupled_ia_error(3, 1.0, 2, 1000, 1000, 7);
    CHECK(r3.max_entry.pass);
    CHECK(r3.frobenius.pass);
    CHECK_THROWS_AS(coupled_ia_error(1, 1.0, 1, 1000, 1000, 1), DimensionError);
}

TEST_CASE("square-root Lipschitz inequalities") {
    const McReport r = sqrt_lipschitz_check(5, 200, 3);
    CHECK(r.estimate == 0.0);
    CHECK(r.pass);
    CHECK(sqrt_lipschitz_check(1, 50, 4).pass);
    CHECK_THROWS_AS(sqrt_lipschitz_check(0, 10, 1), DimensionError);
}

TEST_CASE("fine-grid path oracle") {
    constexpr std::size_t paths = 2000;
    constexpr std::size_t fine = 1000;
    double s12 = 0, s12_4 = 0, cross = 0, cross2 = 0, area = 0, area2 = 0;
    for (std::size_t p = 0; p < paths; ++p) {
        NormalStream s = open_stream({99, p});
        const Simulation sim = path_oracle(2, 1.0, fine, s);
        CHECK(s.draws() == 2 * fine);
        const double w0 = sim.increment.dw[0];
        CHECK(sim.integrals(0, 0) == 0.5 * (w0 * w0 - 1.0));
        const double a = sim.integrals(0, 1);
        const double b = sim.integrals(1, 0);
        s12 += a * a;
        s12_4 += a * a * a * a;
        cross += a * b;
        cross2 += a * b * a * b;
        const double lev = 0.5 * (a - b);
        area += lev * lev;
        area2 += lev * lev * lev * lev;
    }
    const double N = paths;
    auto se = [N](double sum, double sum2) { return std::sqrt((sum2 / N - (sum / N) * (sum / N)) / (N - 1)); };
    CHECK(std::abs(s12 / N - 0.5) <= 3 * se(s12, s12_4) + 1.0 / fine);
    CHECK(std::abs(cross / N) <= 3 * se(cross, cross2) + 1.0 / fine);
    CHECK(std::abs(area / N - 0.25) <= 3 * se(area, area2) + 1.0 / fine);

    NormalStream s = open_stream({1, 1});
    CHECK_THROWS_AS(path_oracle(2, 1.0, 999, s), ParameterError);
}

TEST_CASE("moment suite at reduced size") {
    for (Algorithm algo : {Algorithm::ia, Algorithm::fs}) {
        const auto reps = moment_suite(algo, 3, 0.25, 4, 20000, 11);
        CHECK(reps.size() > 10);
        for (const McReport& r : reps) {
            INFO(r.statistic << " " << r.estimate << " " << r.target);
            CHECK(r.pass);
        }
    }
    CHECK_THROWS_AS(moment_suite(Algorithm::wik, 3, 0.25, 4, 100, 1), ParameterError);
}

TEST_CASE("reports are independent of the worker count") {
    const std::vector<std::size_t> ns{1, 3};
    ::setenv("LEVYSIM_THREADS", "1", 1);
    CHECK(worker_count() == 1);
    const auto one = coupled_fs_error_grid(0.5, ns, 300, 3000, 5);
    const auto m1 = moment_suite(Algorithm::ia, 3, 0.5, 2, 5000, 5);
    ::setenv("LEVYSIM_THREADS", "3", 1);
    CHECK(worker_count() == 3);
    const auto three = coupled_fs_error_grid(0.5, ns, 300, 3000, 5);
    const auto m3 = moment_suite(Algorithm::ia, 3, 0.5, 2, 5000, 5);
    ::unsetenv("LEVYSIM_THREADS");
    for (std::size_t k = 0; k < one.size(); ++k) {
        CHECK(one[k].estimate == three[k].estimate);
        CHECK(one[k].std_error == three[k].std_error);
    }
    REQUIRE(m1.size() == m3.size());
    for (std::size_t k = 0; k < m1.size(); ++k) CHECK(m1[k].estimate == m3[k].estimate);
}
