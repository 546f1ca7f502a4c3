#include "levysim/error_model.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "levysim/errors.hpp"
#include "levysim/levy_sim.hpp"

namespace levysim {

namespace {

using std::numbers::pi;

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ParameterError(std::string(what) + " must be positive and finite");
}

void require_level(std::size_t n) {
    if (n < 1) throw ParameterError("truncation level must be at least 1");
}

std::size_t ceil_count(double v) {
    if (!(v < 9.0e15)) throw ParameterError("truncation level overflows: accuracy too small for the step size");
    const double c = std::ceil(v);
    return c < 1.0 ? 1 : static_cast<std::size_t>(c);
}

double tail_ratio(std::size_t n) {
    const TailConstants t = tail_constants(n);
    return t.beta / t.alpha;
}

}  // namespace

std::string_view to_string(Algorithm algo) {
    switch (algo) {
        case Algorithm::ia: return "IA";
        case Algorithm::wik: return "WIK";
        case Algorithm::fs: return "FS";
    }
    return "?";
}

double gamma_fn(double x) {
    if (!(x >= 0.25 && x <= 60.0)) {
        throw ParameterError("gamma_fn: argument " + std::to_string(x) + " outside [0.25, 60]");
    }
    return std::tgamma(x);
}

double gauss_abs_moment(double p, double sigma) {
    if (!(p >= 1.0)) throw ParameterError("gauss_abs_moment: p must be >= 1");
    require_positive(sigma, "gauss_abs_moment: sigma");
    return std::pow(std::numbers::sqrt2 * sigma, p) / std::sqrt(pi) * gamma_fn(0.5 * (p + 1.0));
}

double chi2_abs_moment(double p, double c) {
    if (!(p > -1.0) || !std::isfinite(p)) throw ParameterError("chi2_abs_moment: p must be > -1");
    if (!std::isfinite(c)) throw ParameterError("chi2_abs_moment: c must be finite");

    double integral = 0.0;
    const double upper = 0.5 * c;
    if (upper != 0.0) {
        boost::math::quadrature::tanh_sinh<double> integrator;
        auto f = [p](double t) { return std::pow(std::abs(t), p) * std::exp(t); };
        const double a = upper > 0.0 ? 0.0 : upper;
        const double b = upper > 0.0 ? upper : 0.0;
        const double value = integrator.integrate(f, a, b, 1e-13);
        integral = upper > 0.0 ? value : -value;
    }
    return std::pow(2.0, p) * std::exp(-0.5 * c) * (std::tgamma(p + 1.0) + integral);
}

double c_mp(std::size_t m, double p) {
    if (m < 2) throw ParameterError("c_mp: m must be at least 2");
    if (!(p > 2.0) || !std::isfinite(p)) throw ParameterError("c_mp: requires p > 2 (p = 2 uses sqrt(m))");
    const double g = gamma_fn(0.5 * (p + 1.0));
    const double first = std::exp(-2.0 / p) * std::pow(std::tgamma(p + 1.0) + std::numbers::e / (p + 1.0), 2.0 / p);
    const double second = (2.0 * static_cast<double>(m) - 4.0) / std::pow(pi, 2.0 / p) * std::pow(g, 4.0 / p);
    return std::pow(g, 1.0 / p) * std::sqrt(first + second);
}

double hat_c(std::size_t m, double p) {
    if (m < 2) throw ParameterError("hat_c: m must be at least 2");
    if (!(p >= 2.0) || !std::isfinite(p)) throw ParameterError("hat_c: p must be >= 2");
    if (p == 2.0) return std::sqrt(static_cast<double>(m)) / (std::sqrt(12.0) * pi);
    return c_mp(m, p) * std::sqrt(p - 1.0) / (std::sqrt(3.0) * std::pow(pi, (2.0 * p + 1.0) / (2.0 * p)));
}

std::size_t choose_n(std::size_t m, double p, double h, double eps) {
    require_positive(h, "choose_n: h");
    require_positive(eps, "choose_n: eps");
    return ceil_count(hat_c(m, p) * h / eps);
}

std::size_t choose_n_fs(double p, double h, double eps) {
    if (!(p >= 2.0) || !std::isfinite(p)) throw ParameterError("choose_n_fs: p must be >= 2");
    require_positive(h, "choose_n_fs: h");
    require_positive(eps, "choose_n_fs: eps");
    const double k = (p - 1.0) * (p - 1.0) / (2.0 * pi * pi) * std::pow(std::tgamma(0.5 * p + 1.0), 2.0 / p);
    return ceil_count(k * (h / eps) * (h / eps));
}

std::size_t choose_n_wik(std::size_t m, double h, double eps) {
    if (m < 2) throw ParameterError("choose_n_wik: m must be at least 2");
    require_positive(h, "choose_n_wik: h");
    require_positive(eps, "choose_n_wik: eps");
    const double md = static_cast<double>(m);
    return ceil_count(std::sqrt(5.0 * (md - 1.0) * md) * h / (std::sqrt(24.0) * pi) / eps);
}

ErrorBudget make_budget(std::size_t m, double p, double h, double eps) {
    return {m, p, h, eps, choose_n(m, p, h, eps)};
}

double l2_error_fs_exact(double h, std::size_t n) {
    require_positive(h, "l2_error_fs_exact: h");
    require_level(n);
    return h / (std::numbers::sqrt2 * pi) * std::sqrt(tail_constants(n).alpha);
}

IaL2Bound l2_error_ia_bound(double h, std::size_t n, std::size_t m) {
    require_positive(h, "l2_error_ia_bound: h");
    require_level(n);
    if (m < 2) throw ParameterError("l2_error_ia_bound: m must be at least 2");
    const double md = static_cast<double>(m);
    const double nd = static_cast<double>(n);
    IaL2Bound out;
    out.max_entry = h / (2.0 * pi) * std::sqrt(md * tail_ratio(n));
    out.frobenius = std::sqrt(md * (md - 1.0)) * out.max_entry;
    out.max_entry_simplified = std::sqrt(md) * h / (std::sqrt(12.0) * pi * nd);
    out.frobenius_simplified = md * std::sqrt(md - 1.0) * h / (std::sqrt(12.0) * pi * nd);
    return out;
}

LpBounds lp_error_bounds(double h, std::size_t n, std::size_t m, double p) {
    require_positive(h, "lp_error_bounds: h");
    require_level(n);
    if (m < 2) throw ParameterError("lp_error_bounds: m must be at least 2");
    if (!(p >= 2.0) || !std::isfinite(p)) throw ParameterError("lp_error_bounds: p must be >= 2");

    LpBounds out;
    out.fs = (p - 1.0) * h / (std::numbers::sqrt2 * pi) * std::pow(std::tgamma(0.5 * p + 1.0), 1.0 / p) *
             std::sqrt(tail_constants(n).alpha);
    if (p == 2.0) {
        const IaL2Bound l2 = l2_error_ia_bound(h, n, m);
        out.ia_max = l2.max_entry;
        out.ia_frob = l2.frobenius;
        out.ia_max_simplified = l2.max_entry_simplified;
        out.ia_frob_simplified = l2.frobenius_simplified;
        return out;
    }
    const double md = static_cast<double>(m);
    const double lead = c_mp(m, p) * h / std::pow(pi, (2.0 * p + 1.0) / (2.0 * p));
    const double root_ratio = std::sqrt(tail_ratio(n));
    const double simplified = 1.0 / (std::sqrt(3.0) * static_cast<double>(n));
    out.ia_max = lead * std::sqrt(p - 1.0) * root_ratio;
    out.ia_frob = lead * std::sqrt((p - 1.0) * (md * md - md)) * root_ratio;
    out.ia_max_simplified = lead * std::sqrt(p - 1.0) * simplified;
    out.ia_frob_simplified = lead * std::sqrt((p - 1.0) * (md * md - md)) * simplified;
    return out;
}

CostReport cost(Algorithm algo, std::size_t m, double p, double h, double eps) {
    if (m < 1) throw ParameterError("cost: m must be at least 1");
    const std::size_t pairs = pair_count(m);
    switch (algo) {
        case Algorithm::ia: {
            const std::size_t n = choose_n(m < 2 ? 2 : m, p, h, eps);
            return {algo, n, 2 * m * (n + 1) + pairs};
        }
        case Algorithm::wik: {
            if (p != 2.0) throw ParameterError("cost: WIK is only available for p = 2 (L^2 schedule only)");
            const std::size_t n = choose_n_wik(m < 2 ? 2 : m, h, eps);
            // 2m (n + 1/2) + M
            return {algo, n, 2 * m * n + m + pairs};
        }
        case Algorithm::fs: {
            const std::size_t n = choose_n_fs(p, h, eps);
            return {algo, n, 2 * m * (n + 1)};
        }
    }
    throw ParameterError("cost: unknown algorithm");
}

}  // namespace levysim
