#include "levysim/validation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/Dense>
#include <boost/math/distributions/normal.hpp>
#include <boost/random/uniform_real_distribution.hpp>

#include "levysim/coupling.hpp"
#include "levysim/covariance_struct.hpp"
#include "levysim/errors.hpp"
#include "levysim/parallel.hpp"

namespace levysim {

namespace {

using std::numbers::pi;

constexpr std::size_t kChunk = 1000;

std::string fmt(const char* pattern, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, pattern, v);
    return buf;
}

// Sum and sum of squares for each of `stats` per-realization statistics.
struct Sums {
    std::size_t n = 0;
    std::vector<double> s1;
    std::vector<double> s2;

    double mean(std::size_t k) const { return s1[k] / static_cast<double>(n); }
    double se(std::size_t k) const {
        const double nd = static_cast<double>(n);
        const double var = std::max((s2[k] - s1[k] * s1[k] / nd) / (nd - 1.0), 0.0);
        return std::sqrt(var / nd);
    }
};

// fn(realization, out) writes `stats` values into out. Chunks reduce in order.
template <typename Fn>
Sums accumulate(std::size_t N, std::size_t stats, Fn&& fn) {
    auto parts = map_chunks<std::vector<double>>(N, kChunk, [&](std::size_t begin, std::size_t end) {
        std::vector<double> acc(2 * stats, 0.0);
        std::vector<double> v(stats);
        for (std::size_t r = begin; r < end; ++r) {
            fn(r, v.data());
            for (std::size_t k = 0; k < stats; ++k) {
                acc[k] += v[k];
                acc[stats + k] += v[k] * v[k];
            }
        }
        return acc;
    });
    Sums out{N, std::vector<double>(stats, 0.0), std::vector<double>(stats, 0.0)};
    for (const auto& p : parts)
        for (std::size_t k = 0; k < stats; ++k) {
            out.s1[k] += p[k];
            out.s2[k] += p[stats + k];
        }
    return out;
}

void require_mc(std::size_t N, const char* what) {
    if (N < 2) throw ParameterError(std::string(what) + ": need at least 2 realizations");
}

void require_cutoff(std::size_t K, std::size_t n_max, const char* what) {
    if (n_max < 1) throw ParameterError(std::string(what) + ": truncation level must be at least 1");
    if (K < 100 * n_max) throw ParameterError(std::string(what) + ": need K >= 100 n");
}

std::string pair_label(std::size_t i, std::size_t j) {
    return std::to_string(i + 1) + "_" + std::to_string(j + 1);
}

// Root of a mean square with delta-method standard error.
std::pair<double, double> root_of(double ms, double se_ms) {
    const double root = std::sqrt(ms);
    return {root, root > 0.0 ? se_ms / (2.0 * root) : 0.0};
}

double ulp_of(double x) {
    const double a = std::abs(x);
    return std::nextafter(a, std::numeric_limits<double>::infinity()) - a;
}

double spectral_norm(const Eigen::MatrixXd& a) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
    return svd.singularValues().size() == 0 ? 0.0 : svd.singularValues()(0);
}

Eigen::MatrixXd to_eigen(const FlatMatrix& a) {
    return Eigen::Map<const Eigen::MatrixXd>(a.data.data(), static_cast<Eigen::Index>(a.rows),
                                             static_cast<Eigen::Index>(a.cols));
}

FlatMatrix from_eigen(const Eigen::MatrixXd& a) {
    FlatMatrix out(static_cast<std::size_t>(a.rows()), static_cast<std::size_t>(a.cols()));
    Eigen::Map<Eigen::MatrixXd>(out.data.data(), a.rows(), a.cols()) = a;
    return out;
}

}  // namespace

std::string McReport::rule_text() const {
    switch (rule) {
        case ToleranceRule::within_se: return "|est-target|<=" + fmt("%g", tolerance) + "SE";
        case ToleranceRule::upper_bound: return "est<=target+" + fmt("%g", tolerance) + "SE";
        case ToleranceRule::absolute: return "|est-target|<=" + fmt("%g", tolerance);
        case ToleranceRule::interval: return "est in [" + fmt("%g", lower) + "," + fmt("%g", upper) + "]";
    }
    return "?";
}

namespace {

McReport make_report(std::string name, double estimate, double se, double target, ToleranceRule rule, double tol) {
    McReport r;
    r.statistic = std::move(name);
    r.estimate = estimate;
    r.std_error = se;
    r.target = target;
    r.rule = rule;
    r.tolerance = tol;
    return r;
}

}  // namespace

McReport within_se(std::string name, double estimate, double se, double target, double k) {
    McReport r = make_report(std::move(name), estimate, se, target, ToleranceRule::within_se, k);
    r.pass = std::abs(estimate - target) <= k * se;
    return r;
}

McReport below_bound(std::string name, double estimate, double se, double bound, double k) {
    McReport r = make_report(std::move(name), estimate, se, bound, ToleranceRule::upper_bound, k);
    r.pass = estimate <= bound + k * se;
    return r;
}

McReport absolute(std::string name, double estimate, double target, double tol) {
    McReport r = make_report(std::move(name), estimate, 0.0, target, ToleranceRule::absolute, tol);
    r.pass = std::abs(estimate - target) <= tol;
    return r;
}

McReport in_interval(std::string name, double estimate, double lower, double upper) {
    McReport r = make_report(std::move(name), estimate, 0.0, lower, ToleranceRule::interval, 0.0);
    r.lower = lower;
    r.upper = upper;
    r.pass = lower <= estimate && estimate <= upper;
    return r;
}

std::size_t default_tail_cutoff(std::size_t n) { return std::max<std::size_t>(10000, 100 * n); }

McReport coupled_fs_error(double h, std::size_t n, std::size_t K, std::size_t N, std::uint64_t seed) {
    const std::size_t ns[] = {n};
    return coupled_fs_error_grid(h, ns, K, N, seed).front();
}

std::vector<McReport> coupled_fs_error_grid(double h, std::span<const std::size_t> ns, std::size_t K,
                                            std::size_t N, std::uint64_t seed) {
    if (ns.empty()) throw ParameterError("coupled_fs_error: empty level list");
    require_cutoff(K, *std::max_element(ns.begin(), ns.end()), "coupled_fs_error");
    require_mc(N, "coupled_fs_error");

    const std::size_t L = ns.size();
    const Sums sums = accumulate(N, L, [&](std::size_t r, double* out) {
        thread_local CoupledDraws draws;
        NormalStream stream({seed, r});
        draw_coupled(2, h, K, stream, draws);
        const auto levels = couple_levels(draws, ns, {.with_psi2 = false});
        for (std::size_t l = 0; l < L; ++l) out[l] = levels[l].r2.a[0] * levels[l].r2.a[0];
    });

    std::vector<McReport> out;
    for (std::size_t l = 0; l < L; ++l) {
        const auto [rms, se] = root_of(sums.mean(l), sums.se(l));
        McReport rep = within_se("fs_l2_error_n" + std::to_string(ns[l]), rms, se, l2_error_fs_exact(h, ns[l]), 3.0);
        rep.note = "K-truncation bias of the mean square <= " + fmt("%.3g", h * h / (2.0 * pi * pi * K));
        out.push_back(std::move(rep));
    }
    return out;
}

IaErrorReport coupled_ia_error(std::size_t m, double h, std::size_t n, std::size_t K, std::size_t N,
                               std::uint64_t seed) {
    const std::size_t ns[] = {n};
    return coupled_ia_error_grid(m, h, ns, K, N, seed).front();
}

std::vector<IaErrorReport> coupled_ia_error_grid(std::size_t m, double h, std::span<const std::size_t> ns,
                                                 std::size_t K, std::size_t N, std::uint64_t seed) {
    if (m < 2) throw DimensionError("coupled_ia_error: need m >= 2");
    if (ns.empty()) throw ParameterError("coupled_ia_error: empty level list");
    require_cutoff(K, *std::max_element(ns.begin(), ns.end()), "coupled_ia_error");
    require_mc(N, "coupled_ia_error");

    const std::size_t M = pair_count(m);
    const std::size_t L = ns.size();
    const std::size_t per_level = M + 1;  // e_r^2 for each pair, then ||.||_F^2
    const Sums sums = accumulate(N, L * per_level, [&](std::size_t r, double* out) {
        thread_local CoupledDraws draws;
        NormalStream stream({seed, r});
        draw_coupled(m, h, K, stream, draws);
        const auto levels = couple_levels(draws, ns);
        for (std::size_t l = 0; l < L; ++l) {
            const LevyVector e = coupled_truth(levels[l]) - coupled_ia(levels[l], draws.increment);
            double frob = 0.0;
            for (std::size_t q = 0; q < M; ++q) {
                out[l * per_level + q] = e.a[q] * e.a[q];
                frob += 2.0 * e.a[q] * e.a[q];
            }
            out[l * per_level + M] = frob;
        }
    });

    std::vector<IaErrorReport> out;
    for (std::size_t l = 0; l < L; ++l) {
        std::size_t worst = 0;
        for (std::size_t q = 1; q < M; ++q)
            if (sums.mean(l * per_level + q) > sums.mean(l * per_level + worst)) worst = q;
        const IaL2Bound bound = l2_error_ia_bound(h, ns[l], m);
        const std::string tag = "_m" + std::to_string(m) + "_n" + std::to_string(ns[l]);

        const auto [max_rms, max_se] = root_of(sums.mean(l * per_level + worst), sums.se(l * per_level + worst));
        const auto [frob_rms, frob_se] = root_of(sums.mean(l * per_level + M), sums.se(l * per_level + M));
        IaErrorReport rep{below_bound("ia_max_entry_l2" + tag, max_rms, max_se, bound.max_entry, 3.0),
                          below_bound("ia_frobenius_l2" + tag, frob_rms, frob_se, bound.frobenius, 3.0)};
        const PairIndex p = index_to_pair(worst, m);
        rep.max_entry.note = "worst pair " + pair_label(p.i, p.j);
        out.push_back(std::move(rep));
    }
    return out;
}

Sigma2Stats sigma2_stats(std::size_t m, double h, std::size_t n, std::size_t K, std::size_t N,
                         std::uint64_t seed) {
    if (m < 2) throw DimensionError("sigma2_stats: need m >= 2");
    if (n < 1 || K <= n) throw ParameterError("sigma2_stats: need K > n >= 1");
    require_mc(N, "sigma2_stats");

    const double s_inf = sigma2_inf(h, n, m);
    const std::size_t M = pair_count(m);
    const Sums sums = accumulate(N, 2, [&](std::size_t r, double* out) {
        NormalStream stream({seed, r});
        const CoupledDraws draws = draw_coupled(m, h, K, stream);
        std::vector<Vector> xs(K - n);
        for (std::size_t k = n + 1; k <= K; ++k)
            xs[k - n - 1].assign(draws.coeffs.x.begin() + (k - 1) * m, draws.coeffs.x.begin() + k * m);
        const FlatMatrix s = sigma2_truncated(h, m, n, K, xs).matrix;
        double row = 0.0;
        double frob = 0.0;
        for (std::size_t b = 0; b < M; ++b)
            for (std::size_t a = 0; a < M; ++a) {
                const double d = s(a, b) - (a == b ? s_inf : 0.0);
                frob += d * d;
                if (a == 0) row += d * d;
            }
        out[0] = row;
        out[1] = frob;
    });

    const std::string tag = "_m" + std::to_string(m) + "_n" + std::to_string(n);
    Sigma2Stats out{within_se("sigma2_row_dev" + tag, sums.mean(0), sums.se(0), sigma2_row_deviation(m, h, n), 5.0),
                    within_se("sigma2_frob_dev" + tag, sums.mean(1), sums.se(1),
                              sigma2_frobenius_deviation(m, h, n), 5.0)};
    const std::string note = "Sigma truncated at K=" + std::to_string(K);
    out.row.note = note;
    out.frobenius.note = note;
    return out;
}

std::vector<McReport> cond_cov_suite(std::size_t m, std::size_t samples, std::size_t N, std::uint64_t seed) {
    if (m < 2) throw DimensionError("cond_cov_suite: need m >= 2");
    require_mc(N, "cond_cov_suite");
    const std::size_t M = pair_count(m);
    const std::string tag = "_m" + std::to_string(m);
    std::vector<McReport> out;

    // Structural checks on `samples` random inputs (substreams N, N+1, ...).
    double max_diff = 0.0;
    double min_eig = std::numeric_limits<double>::infinity();
    std::size_t bad_rows = 0;
    const std::size_t want_nonzero = m >= 2 ? 2 * m - 4 : 0;
    for (std::size_t t = 0; t < samples; ++t) {
        NormalStream stream({seed, N + t});
        const Vector x = draw_normal_vector(stream, m);
        const FlatMatrix d = cond_cov_direct(x).matrix;
        const FlatMatrix b = cond_cov_blocks(x).matrix;
        for (std::size_t k = 0; k < d.data.size(); ++k) max_diff = std::max(max_diff, std::abs(d.data[k] - b.data[k]));
        for (std::size_t a = 0; a < M; ++a) {
            std::size_t nz = 0;
            for (std::size_t q = 0; q < M; ++q)
                if (q != a && d(a, q) != 0.0) ++nz;
            if (nz != want_nonzero) ++bad_rows;
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(to_eigen(d), Eigen::EigenvaluesOnly);
        min_eig = std::min(min_eig, eig.eigenvalues().minCoeff());
    }
    out.push_back(absolute("cov_blocks_vs_direct_maxdiff" + tag, max_diff, 0.0, 1e-12));
    out.push_back(absolute("cov_rows_with_wrong_nonzero_count" + tag, static_cast<double>(bad_rows), 0.0, 0.0));
    out.back().note = "expected " + std::to_string(want_nonzero) + " off-diagonal nonzeros per row";
    out.push_back(in_interval("cov_min_eigenvalue" + tag, min_eig, -1e-10, std::numeric_limits<double>::infinity()));

    // Moments of cond_cov(X), X ~ N(0, I_m). Structurally nonzero upper-triangle
    // entries are tracked, then pooled diagonal / off-diagonal variances and row 0.
    std::vector<std::pair<std::size_t, std::size_t>> cells;
    {
        const Vector probe(m, 1.0);
        const FlatMatrix pattern = cond_cov_blocks(probe).matrix;
        for (std::size_t b = 0; b < M; ++b)
            for (std::size_t a = 0; a <= b; ++a)
                if (pattern(a, b) != 0.0) cells.emplace_back(a, b);
    }
    const std::size_t C = cells.size();
    const Sums sums = accumulate(N, C + 3, [&](std::size_t r, double* v) {
        NormalStream stream({seed, r});
        const Vector x = draw_normal_vector(stream, m);
        const FlatMatrix d = cond_cov_direct(x).matrix;
        double diag_var = 0.0;
        double off_var = 0.0;
        std::size_t off_count = 0;
        for (std::size_t c = 0; c < C; ++c) {
            const auto [a, b] = cells[c];
            v[c] = d(a, b);
            if (a == b) {
                diag_var += (d(a, b) - 2.0) * (d(a, b) - 2.0);
            } else {
                off_var += d(a, b) * d(a, b);
                ++off_count;
            }
        }
        double row = 0.0;
        for (std::size_t q = 0; q < M; ++q) row += (d(0, q) - (q == 0 ? 2.0 : 0.0)) * (d(0, q) - (q == 0 ? 2.0 : 0.0));
        v[C] = diag_var / static_cast<double>(M);
        v[C + 1] = off_count ? off_var / static_cast<double>(off_count) : 0.0;
        v[C + 2] = row;
    });

    // Sidak: the family of C entrywise tests has the false-alarm rate of one 3 SE test.
    const boost::math::normal_distribution<double> std_normal;
    const double single = 2.0 * boost::math::cdf(boost::math::complement(std_normal, 3.0));
    const double per_test = -std::expm1(std::log1p(-single) / static_cast<double>(C));
    const double k_family = boost::math::quantile(boost::math::complement(std_normal, 0.5 * per_test));
    double worst_z = 0.0;
    std::size_t worst_c = 0;
    for (std::size_t c = 0; c < C; ++c) {
        const double target = cells[c].first == cells[c].second ? 2.0 : 0.0;
        const double z = std::abs(sums.mean(c) - target) / sums.se(c);
        if (z > worst_z) {
            worst_z = z;
            worst_c = c;
        }
    }
    McReport mean_rep = in_interval("cov_mean_max_z_vs_2I" + tag, worst_z, 0.0, k_family);
    mean_rep.note = std::to_string(C) + " entries; worst (" + std::to_string(cells[worst_c].first + 1) + "," +
                    std::to_string(cells[worst_c].second + 1) + "); family level of a 3 SE test";
    out.push_back(std::move(mean_rep));
    out.push_back(within_se("cov_diag_variance" + tag, sums.mean(C), sums.se(C), 4.0, 3.0));
    if (m >= 3) out.push_back(within_se("cov_offdiag_variance" + tag, sums.mean(C + 1), sums.se(C + 1), 1.0, 3.0));
    out.push_back(within_se("cov_row_variance_sum" + tag, sums.mean(C + 2), sums.se(C + 2),
                            2.0 * static_cast<double>(m), 3.0));
    return out;
}

std::vector<McReport> abs_moment_check(double p, double sigma, double c, std::size_t N, std::uint64_t seed) {
    require_mc(N, "abs_moment_check");
    const double g_target = gauss_abs_moment(p, sigma);
    const double c_target = chi2_abs_moment(p, c);
    const Sums sums = accumulate(N, 2, [&](std::size_t r, double* v) {
        NormalStream stream({seed, r});
        const double z = stream.next();
        const double x = stream.next();
        const double y = stream.next();
        v[0] = std::pow(std::abs(sigma * z), p);
        v[1] = std::pow(std::abs(x * x + y * y - c), p);
    });
    const std::string tag = "_p" + fmt("%g", p);
    return {within_se("gauss_abs_moment" + tag, sums.mean(0), sums.se(0), g_target, 3.0),
            within_se("chi2_abs_moment" + tag, sums.mean(1), sums.se(1), c_target, 3.0)};
}

McReport sqrt_lipschitz_check(std::size_t q, std::size_t trials, std::uint64_t seed) {
    if (q < 1) throw DimensionError("sqrt_lipschitz_check: need q >= 1");
    std::size_t violations = 0;
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < trials; ++t) {
        Philox4x64 bits({seed, t});
        NormalStream normals({seed, trials + t});
        boost::random::uniform_real_distribution<double> unif(0.0, 1.0);

        Eigen::MatrixXd g(q, q);
        for (Eigen::Index c = 0; c < g.cols(); ++c)
            for (Eigen::Index r = 0; r < g.rows(); ++r) g(r, c) = normals.next();
        const Eigen::MatrixXd u = Eigen::HouseholderQR<Eigen::MatrixXd>(g).householderQ();

        Eigen::VectorXd da(q);
        Eigen::VectorXd db(q);
        for (Eigen::Index l = 0; l < da.size(); ++l) {
            da(l) = unif(bits) < 0.2 ? 0.0 : 4.0 * unif(bits);
            db(l) = 0.05 + 4.0 * unif(bits);
        }
        Eigen::MatrixXd a = u * da.asDiagonal() * u.transpose();
        Eigen::MatrixXd b = u * db.asDiagonal() * u.transpose();
        a = 0.5 * (a + a.transpose()).eval();
        b = 0.5 * (b + b.transpose()).eval();

        const std::size_t rows = 1 + t % q;
        Eigen::MatrixXd c(rows, q);
        for (Eigen::Index cc = 0; cc < c.cols(); ++cc)
            for (Eigen::Index r = 0; r < c.rows(); ++r) c(r, cc) = normals.next();

        const Eigen::MatrixXd ra = to_eigen(sym_psd_sqrt(from_eigen(a)));
        const Eigen::MatrixXd rb = to_eigen(sym_psd_sqrt(from_eigen(b)));
        const double inv_root_min = 1.0 / std::sqrt(db.minCoeff());

        const Eigen::MatrixXd lhs = c * (ra - rb);
        const Eigen::MatrixXd rhs = c * (a - b);
        const double l2 = spectral_norm(lhs);
        const double lf = lhs.norm();
        const double r2 = inv_root_min * spectral_norm(rhs);
        const double rf = inv_root_min * rhs.norm();
        for (const auto& [l, r] : {std::pair{l2, r2}, std::pair{l2, rf}, std::pair{lf, rf}}) {
            const double excess = l - r;
            worst = std::max(worst, excess);
            if (excess > 1e-10 * (1.0 + r)) ++violations;
        }
    }
    McReport rep = absolute("sqrt_lipschitz_violations_q" + std::to_string(q), static_cast<double>(violations), 0.0, 0.0);
    rep.note = std::to_string(trials) + " trials x 3 inequalities; largest lhs-rhs " + fmt("%.3g", worst);
    return rep;
}

Simulation path_oracle(std::size_t m, double h, std::size_t fine_steps, NormalStream& stream) {
    if (m < 1) throw DimensionError("path_oracle: need m >= 1");
    if (!(h > 0.0) || !std::isfinite(h)) throw ParameterError("path_oracle: step size must be positive");
    if (fine_steps < 1000) throw ParameterError("path_oracle: need at least 1000 fine steps");

    const double root_dt = std::sqrt(h / static_cast<double>(fine_steps));
    Vector w(m, 0.0);
    Vector dw(m);
    FlatMatrix sums(m, m);
    for (std::size_t l = 0; l < fine_steps; ++l) {
        stream.fill(dw);
        for (double& v : dw) v *= root_dt;
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t i = 0; i < m; ++i)
                if (i != j) sums(i, j) += w[i] * dw[j];
        for (std::size_t i = 0; i < m; ++i) w[i] += dw[i];
    }

    Simulation sim{{h, w}, {m, h, Calculus::ito, sums}};
    for (std::size_t i = 0; i < m; ++i) sim.integrals.values(i, i) = 0.5 * (w[i] * w[i] - h);
    return sim;
}

double identity_residual_ulps(const Simulation& sim) {
    const std::size_t m = sim.increment.dim();
    const double shift = sim.integrals.calculus == Calculus::ito ? sim.increment.h : 0.0;
    double worst = 0.0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j) {
            const double iij = sim.integrals(i, j);
            const double iji = sim.integrals(j, i);
            const double p = sim.increment.dw[i] * sim.increment.dw[j];
            const double target = i == j ? p - shift : p;
            const double residual = std::abs(iij + iji - target);
            if (residual == 0.0) continue;
            const double scale = std::max({std::abs(target), std::abs(iij), std::abs(iji)});
            worst = std::max(worst, residual / ulp_of(scale));
        }
    return worst;
}

std::vector<McReport> moment_suite(Algorithm algo, std::size_t m, double h, std::size_t n, std::size_t N,
                                   std::uint64_t seed) {
    if (algo == Algorithm::wik) throw ParameterError("moment_suite: only IA and FS are simulated");
    if (m < 2) throw DimensionError("moment_suite: need m >= 2");
    if (n < 1) throw ParameterError("moment_suite: truncation level must be at least 1");
    require_mc(N, "moment_suite");

    // Off-diagonal entries (i,j), i != j, in row-major order.
    std::vector<std::pair<std::size_t, std::size_t>> off;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            if (i != j) off.emplace_back(i, j);
    std::vector<std::pair<std::size_t, std::size_t>> cross;  // indices into `off`, distinct unordered pairs
    for (std::size_t a = 0; a < off.size(); ++a)
        for (std::size_t b = a + 1; b < off.size(); ++b) {
            const auto [i, j] = off[a];
            const auto [k, l] = off[b];
            if (std::min(i, j) == std::min(k, l) && std::max(i, j) == std::max(k, l)) continue;
            cross.emplace_back(a, b);
        }

    const std::size_t mm = m * m;
    const std::size_t stats = mm + pair_count(m) + cross.size();
    struct Chunk {
        std::vector<double> s1;
        std::vector<double> s2;
        double ulps = 0.0;
        double residual = 0.0;
        double max_p = 0.0;
    };
    auto parts = map_chunks<Chunk>(N, kChunk, [&](std::size_t begin, std::size_t end) {
        Chunk c{std::vector<double>(stats, 0.0), std::vector<double>(stats, 0.0)};
        std::vector<double> v(stats);
        for (std::size_t r = begin; r < end; ++r) {
            NormalStream stream({seed, r});
            const Simulation sim = algo == Algorithm::ia ? simulate_ia(m, h, n, stream) : simulate_fs(m, h, n, stream);
            for (std::size_t j = 0; j < m; ++j)
                for (std::size_t i = 0; i < m; ++i) v[i * m + j] = sim.integrals(i, j);
            std::size_t q = mm;
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = i + 1; j < m; ++j) v[q++] = sim.integrals(i, j) * sim.integrals(i, j);
            for (const auto& [a, b] : cross)
                v[q++] = sim.integrals(off[a].first, off[a].second) * sim.integrals(off[b].first, off[b].second);
            for (std::size_t k = 0; k < stats; ++k) {
                c.s1[k] += v[k];
                c.s2[k] += v[k] * v[k];
            }

            c.ulps = std::max(c.ulps, identity_residual_ulps(sim));
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = i + 1; j < m; ++j) {
                    const double p = sim.increment.dw[i] * sim.increment.dw[j];
                    c.residual = std::max(c.residual, std::abs(sim.integrals(i, j) + sim.integrals(j, i) - p));
                    c.max_p = std::max(c.max_p, std::abs(p));
                }
        }
        return c;
    });
    Sums sums{N, std::vector<double>(stats, 0.0), std::vector<double>(stats, 0.0)};
    Chunk total;
    for (const Chunk& c : parts) {
        for (std::size_t k = 0; k < stats; ++k) {
            sums.s1[k] += c.s1[k];
            sums.s2[k] += c.s2[k];
        }
        total.ulps = std::max(total.ulps, c.ulps);
        total.residual = std::max(total.residual, c.residual);
        total.max_p = std::max(total.max_p, c.max_p);
    }

    const std::string tag = std::string("_") + std::string(to_string(algo));
    std::vector<McReport> out;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            out.push_back(within_se("mean_I_" + pair_label(i, j) + tag, sums.mean(i * m + j), sums.se(i * m + j), 0.0, 3.0));

    const double second = algo == Algorithm::ia ? 0.5 * h * h
                                                : 0.5 * h * h - h * h / (2.0 * pi * pi) * tail_constants(n).alpha;
    std::size_t q = mm;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j, ++q)
            out.push_back(within_se("second_moment_I_" + pair_label(i, j) + tag, sums.mean(q), sums.se(q), second, 3.0));
    for (const auto& [a, b] : cross) {
        out.push_back(within_se("cross_I_" + pair_label(off[a].first, off[a].second) + "_I_" +
                                    pair_label(off[b].first, off[b].second) + tag,
                                sums.mean(q), sums.se(q), 0.0, 3.0));
        ++q;
    }

    McReport local = in_interval("identity_residual_ulps" + tag, total.ulps, 0.0, 4.0);
    local.note = "ulps of max(|dWi dWj|, |I(i,j)|, |I(j,i)|) per realization";
    out.push_back(std::move(local));
    McReport batch = in_interval("identity_residual_batch" + tag, total.residual, 0.0, 4.0 * ulp_of(total.max_p));
    batch.note = "largest residual vs 4 ulps of the largest |dWi dWj| in the batch";
    out.push_back(std::move(batch));
    return out;
}

double fit_slope(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) throw DimensionError("fit_slope: length mismatch");
    if (xs.size() < 3) throw ParameterError("fit_slope: need at least 3 points");
    const double nd = static_cast<double>(xs.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        if (!(xs[k] > 0.0) || !(ys[k] > 0.0)) throw ParameterError("fit_slope: inputs must be positive");
        mx += std::log(xs[k]);
        my += std::log(ys[k]);
    }
    mx /= nd;
    my /= nd;
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        const double dx = std::log(xs[k]) - mx;
        sxy += dx * (std::log(ys[k]) - my);
        sxx += dx * dx;
    }
    if (sxx == 0.0) throw ParameterError("fit_slope: all x values equal");
    return sxy / sxx;
}

}  // namespace levysim
