#pragma once

// Closed-form errors, bounds, truncation-level schedules and draw-count
// costs for the IA, WIK and FS algorithms.

#include <cstddef>
#include <string_view>

namespace levysim {

enum class Algorithm { ia, wik, fs };

std::string_view to_string(Algorithm algo);

/// Gamma function on [0.25, 60]; ParameterError outside.
double gamma_fn(double x);

/// E|Z|^p for Z ~ N(0, sigma^2), p >= 1.
double gauss_abs_moment(double p, double sigma);

/// E|X^2 + Y^2 - c|^p for independent standard normals X, Y, p > -1.
double chi2_abs_moment(double p, double c);

/// L^p constant of the IA bound, p > 2, m >= 2.
double c_mp(std::size_t m, double p);

/// Schedule constant: n = ceil(hat_c * h / eps).
double hat_c(std::size_t m, double p);

/// IA truncation level for L^p accuracy eps (floored at 1).
std::size_t choose_n(std::size_t m, double p, double h, double eps);

/// FS truncation level for L^p accuracy eps.
std::size_t choose_n_fs(double p, double h, double eps);

/// Wiktorsson truncation level for L^2 accuracy eps.
std::size_t choose_n_wik(std::size_t m, double h, double eps);

struct ErrorBudget {
    std::size_t m = 0;
    double p = 2.0;
    double h = 0.0;
    double eps = 0.0;
    std::size_t n = 0;
};

ErrorBudget make_budget(std::size_t m, double p, double h, double eps);

/// Exact L^2 error of the FS approximation for an off-diagonal entry.
double l2_error_fs_exact(double h, std::size_t n);

struct IaL2Bound {
    double max_entry = 0.0;             // sqrt of the exact-tail-ratio bound
    double frobenius = 0.0;
    double max_entry_simplified = 0.0;  // sqrt(m) h / (sqrt(12) pi n)
    double frobenius_simplified = 0.0;
};

IaL2Bound l2_error_ia_bound(double h, std::size_t n, std::size_t m);

struct LpBounds {
    double fs = 0.0;
    double ia_max = 0.0;
    double ia_frob = 0.0;
    double ia_max_simplified = 0.0;
    double ia_frob_simplified = 0.0;
};

/// FS bound for p >= 2 (equality at p = 2). IA terms use the L^p theorem for
/// p > 2 and fall back to the sharper L^2 bounds at p = 2.
LpBounds lp_error_bounds(double h, std::size_t n, std::size_t m, double p);

struct CostReport {
    Algorithm algo = Algorithm::ia;
    std::size_t n = 0;
    std::size_t draws = 0;
};

/// Number of N(0,1) realizations for one (dW, I) realization at accuracy eps.
/// WIK requires p == 2.
CostReport cost(Algorithm algo, std::size_t m, double p, double h, double eps);

}  // namespace levysim
