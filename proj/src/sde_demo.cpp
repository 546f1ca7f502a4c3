#include "levysim/sde_demo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "levysim/coupling.hpp"
#include "levysim/error_model.hpp"
#include "levysim/errors.hpp"
#include "levysim/parallel.hpp"
#include "levysim/validation.hpp"

namespace levysim {

namespace {

struct PathErrors {
    double ia = 0.0;
    double fs = 0.0;
    double euler = 0.0;
};

std::size_t steps_for(double T, double h) {
    const double ratio = T / h;
    const double rounded = std::round(ratio);
    if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9 * rounded) {
        throw ParameterError("run_demo: step size " + std::to_string(h) + " does not divide T");
    }
    return static_cast<std::size_t>(rounded);
}

std::size_t level_for(const DemoConfig& cfg, double h) {
    return cfg.fixed_n ? *cfg.fixed_n : choose_n(2, 2.0, h, std::pow(h, 1.5));
}

// Squared terminal errors of X2 for one path.
PathErrors run_path(double h, std::size_t steps, std::size_t n, std::size_t K, NormalStream& stream) {
    const std::size_t level[] = {n};
    double x1 = 0.0;
    double x2_true = 0.0;
    double x2_ia = 0.0;
    double x2_fs = 0.0;
    double x2_euler = 0.0;
    for (std::size_t s = 0; s < steps; ++s) {
        const CoupledDraws d = draw_coupled(2, h, K, stream);
        const CoupledLevel lv = couple_levels(d, level).front();
        const double dw1 = d.increment.dw[0];
        const double dw2 = d.increment.dw[1];
        const double half = 0.5 * (dw1 * dw2);

        x2_true += x1 * dw2 + (half + coupled_truth(lv).a[0]);
        x2_ia += x1 * dw2 + (half + coupled_ia(lv, d.increment).a[0]);
        x2_fs += x1 * dw2 + (half + coupled_fs(lv, d.increment).a[0]);
        x2_euler += x1 * dw2;
        x1 += dw1;
    }
    const auto sq = [](double v) { return v * v; };
    return {sq(x2_ia - x2_true), sq(x2_fs - x2_true), sq(x2_euler - x2_true)};
}

}  // namespace

DemoResult run_demo(const DemoConfig& cfg) {
    if (!(cfg.T > 0.0) || !std::isfinite(cfg.T)) throw ParameterError("run_demo: T must be positive");
    if (cfg.h_list.size() < 3) throw ParameterError("run_demo: need at least 3 step sizes");
    if (cfg.paths == 0) throw ParameterError("run_demo: need at least one path");
    std::size_t n_max = 0;
    for (double h : cfg.h_list) {
        if (!(h > 0.0) || !std::isfinite(h)) throw ParameterError("run_demo: step sizes must be positive");
        steps_for(cfg.T, h);
        n_max = std::max(n_max, level_for(cfg, h));
    }
    if (cfg.fixed_n && (*cfg.fixed_n < 1 || *cfg.fixed_n > cfg.K)) {
        throw ParameterError("run_demo: fixed n must lie in [1, K]");
    }
    if (!cfg.fixed_n && cfg.K < 100 * n_max) throw ParameterError("run_demo: need K >= 100 * max n");

    DemoResult out;
    for (std::size_t li = 0; li < cfg.h_list.size(); ++li) {
        const double h = cfg.h_list[li];
        const std::size_t steps = steps_for(cfg.T, h);
        const std::size_t n = level_for(cfg, h);

        struct Acc {
            double s1[3] = {0, 0, 0};
            double s2[3] = {0, 0, 0};
        };
        const auto parts = map_chunks<Acc>(cfg.paths, 16, [&](std::size_t begin, std::size_t end) {
            Acc acc;
            for (std::size_t p = begin; p < end; ++p) {
                NormalStream stream({cfg.seed, (static_cast<std::uint64_t>(li) << 32) | p});
                const PathErrors e = run_path(h, steps, n, cfg.K, stream);
                const double v[3] = {e.ia, e.fs, e.euler};
                for (int k = 0; k < 3; ++k) {
                    acc.s1[k] += v[k];
                    acc.s2[k] += v[k] * v[k];
                }
            }
            return acc;
        });
        Acc total;
        for (const Acc& a : parts)
            for (int k = 0; k < 3; ++k) {
                total.s1[k] += a.s1[k];
                total.s2[k] += a.s2[k];
            }

        const double N = static_cast<double>(cfg.paths);
        double rmse[3];
        double se[3];
        for (int k = 0; k < 3; ++k) {
            const double mean = total.s1[k] / N;
            rmse[k] = std::sqrt(mean);
            se[k] = cfg.paths > 1 ? std::sqrt(std::max(total.s2[k] / N - mean * mean, 0.0) / (N - 1.0)) : 0.0;
        }
        out.rows.push_back({h, n, rmse[0], rmse[1], rmse[2], se[0], se[1], se[2]});
    }

    auto slope = [&](double DemoRow::*field) {
        std::vector<double> xs;
        std::vector<double> ys;
        for (const DemoRow& r : out.rows) {
            xs.push_back(r.h);
            ys.push_back(r.*field);
        }
        if (std::any_of(ys.begin(), ys.end(), [](double y) { return !(y > 0.0); }))
            return std::numeric_limits<double>::quiet_NaN();
        return fit_slope(xs, ys);
    };
    out.slope_milstein_ia = slope(&DemoRow::rmse_milstein_ia);
    out.slope_milstein_fs = slope(&DemoRow::rmse_milstein_fs);
    out.slope_euler = slope(&DemoRow::rmse_euler);
    return out;
}

}  // namespace levysim
