#pragma once

// Monte Carlo validation harness. Every statistic is returned as an McReport
// carrying its estimate, standard error, target and the tolerance rule used
// to decide pass/fail. Realization r always draws from substream r of the
// given seed, and reductions run in realization order.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "levysim/error_model.hpp"
#include "levysim/gaussian_source.hpp"
#include "levysim/levy_sim.hpp"

namespace levysim {

enum class ToleranceRule {
    within_se,    // |estimate - target| <= k * SE
    upper_bound,  // estimate <= target + k * SE
    absolute,     // |estimate - target| <= tol
    interval,     // lower <= estimate <= upper
};

struct McReport {
    std::string statistic;
    double estimate = 0.0;
    double std_error = 0.0;
    double target = 0.0;
    ToleranceRule rule = ToleranceRule::within_se;
    double tolerance = 3.0;  // k for SE rules, absolute tolerance otherwise
    double lower = 0.0;      // interval rule only
    double upper = 0.0;
    bool pass = false;
    std::string note;

    std::string rule_text() const;
};

McReport within_se(std::string name, double estimate, double se, double target, double k);
McReport below_bound(std::string name, double estimate, double se, double bound, double k);
McReport absolute(std::string name, double estimate, double target, double tol);
McReport in_interval(std::string name, double estimate, double lower, double upper);

/// Default tail cutoff max(1e4, 100 n).
std::size_t default_tail_cutoff(std::size_t n);

/// Root-mean-square of R2 for pair (1,2) against the exact FS L^2 error.
McReport coupled_fs_error(double h, std::size_t n, std::size_t K, std::size_t N, std::uint64_t seed);

/// Several levels from one set of draws; report i belongs to ns[i].
std::vector<McReport> coupled_fs_error_grid(double h, std::span<const std::size_t> ns, std::size_t K,
                                            std::size_t N, std::uint64_t seed);

struct IaErrorReport {
    McReport max_entry;  // sqrt(max_r E|e_r|^2) vs the exact-tail-ratio bound
    McReport frobenius;  // sqrt(E||I - I^(n)||_F^2) vs its bound
};

IaErrorReport coupled_ia_error(std::size_t m, double h, std::size_t n, std::size_t K, std::size_t N,
                               std::uint64_t seed);

std::vector<IaErrorReport> coupled_ia_error_grid(std::size_t m, double h, std::span<const std::size_t> ns,
                                                 std::size_t K, std::size_t N, std::uint64_t seed);

struct Sigma2Stats {
    McReport row;        // sum_q E|(Sigma - Sigma_inf)_{1,q}|^2
    McReport frobenius;  // E||Sigma - Sigma_inf||_F^2
};

Sigma2Stats sigma2_stats(std::size_t m, double h, std::size_t n, std::size_t K, std::size_t N,
                         std::uint64_t seed);

/// cond_cov_blocks against cond_cov_direct on `samples` random inputs, the
/// per-row off-diagonal nonzero count, PSD-ness, and MC moments of
/// cond_cov(X) for X ~ N(0, I_m) over N draws. The entrywise mean check uses
/// a family-wise level equal to that of a single 3 SE test.
std::vector<McReport> cond_cov_suite(std::size_t m, std::size_t samples, std::size_t N, std::uint64_t seed);

/// gauss_abs_moment(p, sigma) and chi2_abs_moment(p, c) against N draws.
std::vector<McReport> abs_moment_check(double p, double sigma, double c, std::size_t N, std::uint64_t seed);

/// Randomized check of the square-root Lipschitz inequalities for commuting
/// symmetric pairs. Estimate is the number of violations beyond 1e-10.
McReport sqrt_lipschitz_check(std::size_t q, std::size_t trials, std::uint64_t seed);

/// Left-point Riemann-Itô sums on a uniform grid of fine_steps cells.
/// Consumes m * fine_steps normals, step by step.
Simulation path_oracle(std::size_t m, double h, std::size_t fine_steps, NormalStream& stream);

/// Entry means, off-diagonal second moments, cross-covariances between
/// distinct pairs, and the residual of dW_i dW_j = I(i,j) + I(j,i).
std::vector<McReport> moment_suite(Algorithm algo, std::size_t m, double h, std::size_t n, std::size_t N,
                                   std::uint64_t seed);

/// Least-squares slope of log(ys) against log(xs).
double fit_slope(std::span<const double> xs, std::span<const double> ys);

/// Largest |I(i,j) + I(j,i) - (dw_i dw_j - h 1{i=j})| measured in ulps of
/// the largest magnitude among dw_i dw_j, I(i,j), I(j,i).
double identity_residual_ulps(const Simulation& sim);

}  // namespace levysim
