#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

#include "levysim/linalg_kron.hpp"

namespace testutil {

// Test inputs come from the standard library engine, not from the library's
// own generator.
inline std::vector<double> normals(std::mt19937_64& rng, std::size_t n) {
    std::normal_distribution<double> d;
    std::vector<double> v(n);
    for (double& x : v) x = d(rng);
    return v;
}

inline levysim::FlatMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c) {
    levysim::FlatMatrix a(r, c);
    a.data = normals(rng, r * c);
    return a;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) d = std::max(d, std::abs(a[k] - b[k]));
    return d;
}

}  // namespace testutil
