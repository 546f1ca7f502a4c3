#pragma once

// Milstein with approximate iterated integrals versus Euler-Maruyama on
//   dX1 = dW1,  dX2 = X1 dW2,  X(0) = 0.
// With exact integrals Milstein is exact for this system, so its RMSE
// measures only the integral approximation error.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace levysim {

struct DemoConfig {
    double T = 1.0;
    std::vector<double> h_list{0.125, 0.0625, 0.03125, 0.015625, 0.0078125};
    std::size_t paths = 1000;
    std::size_t K = 2000;                  // modes of the reference integral
    std::uint64_t seed = 20210121;
    std::optional<std::size_t> fixed_n;    // overrides n = choose_n(2, 2, h, h^{3/2})
};

struct DemoRow {
    double h = 0.0;
    std::size_t n = 0;
    double rmse_milstein_ia = 0.0;
    double rmse_milstein_fs = 0.0;
    double rmse_euler = 0.0;
    double se_milstein_ia = 0.0;  // standard error of the mean square
    double se_milstein_fs = 0.0;
    double se_euler = 0.0;
};

struct DemoResult {
    std::vector<DemoRow> rows;
    double slope_milstein_ia = 0.0;
    double slope_milstein_fs = 0.0;
    double slope_euler = 0.0;
};

/// Throws ParameterError unless every h divides T, there are at least three
/// step sizes, paths > 0, and K >= 100 * (largest selected n).
DemoResult run_demo(const DemoConfig& cfg);

}  // namespace levysim
