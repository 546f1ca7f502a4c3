#pragma once

// Truncated Fourier series Lévy area, the two tail terms, and assembly of
// the iterated Itô/Stratonovich integral matrix for one step of length h.
//
// Normal draws are consumed in a fixed order:
//   V (m), then X_1, Y_1, ..., X_n, Y_n (m each), then Psi1 (m), then Psi2 (M).
// The FS variant stops after Psi1.

#include <cstddef>
#include <span>

#include "levysim/gaussian_source.hpp"
#include "levysim/linalg_kron.hpp"

namespace levysim {

enum class Calculus { ito, stratonovich };

struct IncrementVector {
    double h = 0.0;
    Vector dw;

    std::size_t dim() const { return dw.size(); }
};

/// Standard-normal Fourier coefficients for modes k = 1..n.
/// Mode k (1-based) of component i lives at x[(k-1)*m + i].
struct CoefficientBlock {
    std::size_t m = 0;
    std::size_t n = 0;
    Vector x;
    Vector y;

    CoefficientBlock() = default;
    CoefficientBlock(std::size_t dim, std::size_t modes)
        : m(dim), n(modes), x(dim * modes, 0.0), y(dim * modes, 0.0) {}

    double& x_at(std::size_t i, std::size_t k) { return x[(k - 1) * m + i]; }
    double& y_at(std::size_t i, std::size_t k) { return y[(k - 1) * m + i]; }
    double x_at(std::size_t i, std::size_t k) const { return x[(k - 1) * m + i]; }
    double y_at(std::size_t i, std::size_t k) const { return y[(k - 1) * m + i]; }
};

/// Strictly-upper pair values in pair_to_index order.
struct LevyVector {
    std::size_t m = 0;
    Vector a;

    LevyVector() = default;
    explicit LevyVector(std::size_t dim) : m(dim), a(pair_count(dim), 0.0) {}

    LevyVector& operator+=(const LevyVector& other);
};

LevyVector operator+(LevyVector lhs, const LevyVector& rhs);
LevyVector operator-(LevyVector lhs, const LevyVector& rhs);

struct IntegralMatrix {
    std::size_t m = 0;
    double h = 0.0;
    Calculus calculus = Calculus::ito;
    FlatMatrix values;

    double operator()(std::size_t i, std::size_t j) const { return values(i, j); }
};

/// alpha = sum_{k>n} k^-2, beta = sum_{k>n} k^-4, clamped at 0.
struct TailConstants {
    double alpha = 0.0;
    double beta = 0.0;
};

TailConstants tail_constants(std::size_t n);

/// Finite tail sums over n < k <= K, accumulated in descending k.
TailConstants tail_constants(std::size_t n, std::size_t K);

LevyVector truncated_area(const IncrementVector& inc, const CoefficientBlock& coeffs);

/// Exact Gaussian surrogate for the first remainder, driven by psi1 ~ N(0, I_m).
LevyVector tail1(const IncrementVector& inc, std::size_t n, std::span<const double> psi1);
LevyVector tail1(const IncrementVector& inc, const TailConstants& tail, std::span<const double> psi1);

/// Diagonal-covariance surrogate for the second remainder, psi2 ~ N(0, I_M).
LevyVector tail2(double h, std::size_t m, std::size_t n, std::span<const double> psi2);
LevyVector tail2(double h, std::size_t m, const TailConstants& tail, std::span<const double> psi2);

/// Builds the m x m matrix from the increments and the total area.
/// I(i,j) = p/2 + a_r and I(j,i) = p/2 - a_r share one product p = dw_i*dw_j.
IntegralMatrix assemble(const IncrementVector& inc, const LevyVector& area_total, Calculus calculus);

/// Shifts the diagonal by +-h/2. Off-diagonal entries are untouched.
IntegralMatrix convert(const IntegralMatrix& matrix, Calculus target);

struct Simulation {
    IncrementVector increment;
    IntegralMatrix integrals;
};

constexpr std::size_t draws_ia(std::size_t m, std::size_t n) { return 2 * m * (n + 1) + pair_count(m); }
constexpr std::size_t draws_fs(std::size_t m, std::size_t n) { return 2 * m * (n + 1); }

/// Improved algorithm: truncated series, exact first tail, isotropic second tail.
/// Returns the Itô matrix.
Simulation simulate_ia(std::size_t m, double h, std::size_t n, NormalStream& stream);

/// Truncated Fourier series with the exact first tail only.
Simulation simulate_fs(std::size_t m, double h, std::size_t n, NormalStream& stream);

}  // namespace levysim
