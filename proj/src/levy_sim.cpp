#include "levysim/levy_sim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "levysim/errors.hpp"

namespace levysim {

namespace {

using std::numbers::pi;

void require_size(std::size_t got, std::size_t want, const char* what) {
    if (got != want) {
        throw DimensionError(std::string(what) + ": expected length " + std::to_string(want) + ", got " +
                             std::to_string(got));
    }
}

void require_step(double h, const char* what) {
    if (!(h > 0.0) || !std::isfinite(h)) throw ParameterError(std::string(what) + ": step size must be positive");
}

}  // namespace

LevyVector& LevyVector::operator+=(const LevyVector& other) {
    require_size(other.a.size(), a.size(), "LevyVector::operator+=");
    for (std::size_t r = 0; r < a.size(); ++r) a[r] += other.a[r];
    return *this;
}

LevyVector operator+(LevyVector lhs, const LevyVector& rhs) {
    lhs += rhs;
    return lhs;
}

LevyVector operator-(LevyVector lhs, const LevyVector& rhs) {
    require_size(rhs.a.size(), lhs.a.size(), "LevyVector::operator-");
    for (std::size_t r = 0; r < lhs.a.size(); ++r) lhs.a[r] -= rhs.a[r];
    return lhs;
}

TailConstants tail_constants(std::size_t n) {
    double s2 = 0.0;
    double s4 = 0.0;
    for (std::size_t k = n; k >= 1; --k) {
        const double inv2 = 1.0 / (static_cast<double>(k) * static_cast<double>(k));
        s2 += inv2;
        s4 += inv2 * inv2;
    }
    constexpr double zeta2 = pi * pi / 6.0;
    constexpr double zeta4 = pi * pi * pi * pi / 90.0;
    return {std::max(zeta2 - s2, 0.0), std::max(zeta4 - s4, 0.0)};
}

TailConstants tail_constants(std::size_t n, std::size_t K) {
    TailConstants out;
    for (std::size_t k = K; k > n; --k) {
        const double inv2 = 1.0 / (static_cast<double>(k) * static_cast<double>(k));
        out.alpha += inv2;
        out.beta += inv2 * inv2;
    }
    return out;
}

LevyVector truncated_area(const IncrementVector& inc, const CoefficientBlock& coeffs) {
    const std::size_t m = inc.dim();
    require_size(coeffs.m, m, "truncated_area");
    require_size(coeffs.x.size(), m * coeffs.n, "truncated_area (x)");
    require_size(coeffs.y.size(), m * coeffs.n, "truncated_area (y)");
    require_step(inc.h, "truncated_area");

    LevyVector out(m);
    if (m < 2) return out;

    const double shift = std::sqrt(2.0 / inc.h);
    Vector z(m);
    for (std::size_t k = 1; k <= coeffs.n; ++k) {
        const double* x = &coeffs.x[(k - 1) * m];
        const double* y = &coeffs.y[(k - 1) * m];
        for (std::size_t j = 0; j < m; ++j) z[j] = y[j] - shift * inc.dw[j];
        const double inv_k = 1.0 / static_cast<double>(k);
        std::size_t r = 0;
        for (std::size_t i = 0; i + 1 < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j, ++r) out.a[r] += inv_k * (x[i] * z[j] - x[j] * z[i]);
    }
    const double scale = inc.h / (2.0 * pi);
    for (double& v : out.a) v *= scale;
    return out;
}

LevyVector tail1(const IncrementVector& inc, std::size_t n, std::span<const double> psi1) {
    return tail1(inc, tail_constants(n), psi1);
}

LevyVector tail1(const IncrementVector& inc, const TailConstants& tail, std::span<const double> psi1) {
    const std::size_t m = inc.dim();
    require_size(psi1.size(), m, "tail1");
    require_step(inc.h, "tail1");
    LevyVector out(m);
    const double scale = std::sqrt(inc.h) / (std::numbers::sqrt2 * pi) * std::sqrt(tail.alpha);
    std::size_t r = 0;
    for (std::size_t i = 0; i + 1 < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j, ++r)
            out.a[r] = scale * (inc.dw[i] * psi1[j] - inc.dw[j] * psi1[i]);
    return out;
}

LevyVector tail2(double h, std::size_t m, std::size_t n, std::span<const double> psi2) {
    return tail2(h, m, tail_constants(n), psi2);
}

LevyVector tail2(double h, std::size_t m, const TailConstants& tail, std::span<const double> psi2) {
    require_size(psi2.size(), pair_count(m), "tail2");
    require_step(h, "tail2");
    LevyVector out(m);
    const double scale = h / (std::numbers::sqrt2 * pi) * std::sqrt(tail.alpha);
    for (std::size_t r = 0; r < out.a.size(); ++r) out.a[r] = scale * psi2[r];
    return out;
}

IntegralMatrix assemble(const IncrementVector& inc, const LevyVector& area_total, Calculus calculus) {
    const std::size_t m = inc.dim();
    require_size(area_total.a.size(), pair_count(m), "assemble");
    IntegralMatrix out{m, inc.h, Calculus::ito, FlatMatrix(m, m)};
    for (std::size_t i = 0; i < m; ++i) out.values(i, i) = 0.5 * (inc.dw[i] * inc.dw[i] - inc.h);
    std::size_t r = 0;
    for (std::size_t i = 0; i + 1 < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j, ++r) {
            const double half_product = 0.5 * (inc.dw[i] * inc.dw[j]);
            out.values(i, j) = half_product + area_total.a[r];
            out.values(j, i) = half_product - area_total.a[r];
        }
    return calculus == Calculus::ito ? out : convert(out, calculus);
}

IntegralMatrix convert(const IntegralMatrix& matrix, Calculus target) {
    IntegralMatrix out = matrix;
    if (matrix.calculus == target) return out;
    const double shift = target == Calculus::stratonovich ? 0.5 * matrix.h : -0.5 * matrix.h;
    for (std::size_t i = 0; i < matrix.m; ++i) out.values(i, i) += shift;
    out.calculus = target;
    return out;
}

namespace {

struct StepDraws {
    IncrementVector inc;
    CoefficientBlock coeffs;
    Vector psi1;
};

StepDraws draw_step(std::size_t m, double h, std::size_t n, NormalStream& stream, const char* what) {
    if (m < 1) throw ParameterError(std::string(what) + ": dimension must be at least 1");
    if (n < 1) throw ParameterError(std::string(what) + ": truncation level must be at least 1");
    require_step(h, what);

    StepDraws d{{h, draw_normal_vector(stream, m)}, CoefficientBlock(m, n), Vector(m)};
    const double root_h = std::sqrt(h);
    for (double& v : d.inc.dw) v *= root_h;
    for (std::size_t k = 1; k <= n; ++k) {
        stream.fill(std::span<double>(d.coeffs.x).subspan((k - 1) * m, m));
        stream.fill(std::span<double>(d.coeffs.y).subspan((k - 1) * m, m));
    }
    stream.fill(d.psi1);
    return d;
}

}  // namespace

Simulation simulate_ia(std::size_t m, double h, std::size_t n, NormalStream& stream) {
    StepDraws d = draw_step(m, h, n, stream, "simulate_ia");
    Vector psi2 = draw_normal_vector(stream, pair_count(m));
    if (m == 1) return {d.inc, assemble(d.inc, LevyVector(m), Calculus::ito)};

    const TailConstants tail = tail_constants(n);
    LevyVector area = truncated_area(d.inc, d.coeffs);
    area += tail1(d.inc, tail, d.psi1);
    area += tail2(h, m, tail, psi2);
    return {d.inc, assemble(d.inc, area, Calculus::ito)};
}

Simulation simulate_fs(std::size_t m, double h, std::size_t n, NormalStream& stream) {
    StepDraws d = draw_step(m, h, n, stream, "simulate_fs");
    if (m == 1) return {d.inc, assemble(d.inc, LevyVector(m), Calculus::ito)};

    LevyVector area = truncated_area(d.inc, d.coeffs);
    area += tail1(d.inc, n, d.psi1);
    return {d.inc, assemble(d.inc, area, Calculus::ito)};
}

}  // namespace levysim
