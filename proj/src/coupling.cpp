#include "levysim/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "levysim/covariance_struct.hpp"
#include "levysim/errors.hpp"

namespace levysim {

namespace {

using std::numbers::pi;

struct Suffix {
    Vector sx;      // sum x_k / k
    Vector r2;      // sum (x_i y_j - x_j y_i) / k, pair order
    FlatMatrix gram;  // sum x_k x_k^T / k^2
    TailConstants tail;
};

Vector solve_with_root(const FlatMatrix& sigma, const Vector& rhs) {
    const FlatMatrix root = sym_psd_sqrt(sigma);
    const Eigen::Map<const Eigen::MatrixXd> s(root.data.data(), static_cast<Eigen::Index>(root.rows),
                                              static_cast<Eigen::Index>(root.cols));
    const Eigen::LLT<Eigen::MatrixXd> llt(s);
    if (llt.info() != Eigen::Success) throw MatrixError("couple_levels: conditional covariance is singular");
    const Eigen::Map<const Eigen::VectorXd> b(rhs.data(), static_cast<Eigen::Index>(rhs.size()));
    const Eigen::VectorXd z = llt.solve(b);
    return Vector(z.data(), z.data() + z.size());
}

// Adds modes hi, hi-1, ..., lo+1 to the suffix sums. Dim > 0 fixes m at compile time.
template <std::size_t Dim>
void accumulate_suffix(const CoefficientBlock& c, std::size_t hi, std::size_t lo, Suffix& s, bool with_gram) {
    const std::size_t m = Dim > 0 ? Dim : c.m;
    double* __restrict sx = s.sx.data();
    double* __restrict r2 = s.r2.data();
    double* __restrict gram = s.gram.data.data();
    double alpha = s.tail.alpha;
    double beta = s.tail.beta;
    for (std::size_t k = hi; k > lo; --k) {
        const double* __restrict x = &c.x[(k - 1) * m];
        const double* __restrict y = &c.y[(k - 1) * m];
        const double inv_k = 1.0 / static_cast<double>(k);
        const double inv2 = inv_k * inv_k;
        alpha += inv2;
        beta += inv2 * inv2;
        for (std::size_t i = 0; i < m; ++i) sx[i] += inv_k * x[i];
        std::size_t r = 0;
        for (std::size_t i = 0; i + 1 < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j, ++r) r2[r] += inv_k * (x[i] * y[j] - x[j] * y[i]);
        if (with_gram) {
            for (std::size_t b = 0; b < m; ++b)
                for (std::size_t a = 0; a < m; ++a) gram[b * m + a] += inv2 * x[a] * x[b];
        }
    }
    s.tail.alpha = alpha;
    s.tail.beta = beta;
}

}  // namespace

CoupledDraws draw_coupled(std::size_t m, double h, std::size_t K, NormalStream& stream) {
    CoupledDraws d;
    draw_coupled(m, h, K, stream, d);
    return d;
}

void draw_coupled(std::size_t m, double h, std::size_t K, NormalStream& stream, CoupledDraws& out) {
    if (m < 1) throw ParameterError("draw_coupled: dimension must be at least 1");
    if (K < 1) throw ParameterError("draw_coupled: need at least one mode");
    if (!(h > 0.0) || !std::isfinite(h)) throw ParameterError("draw_coupled: step size must be positive");

    out.increment.h = h;
    out.increment.dw.resize(m);
    stream.fill(out.increment.dw);
    const double root_h = std::sqrt(h);
    for (double& v : out.increment.dw) v *= root_h;

    CoefficientBlock& c = out.coeffs;
    c.m = m;
    c.n = K;
    c.x.resize(m * K);
    c.y.resize(m * K);
    for (std::size_t k = 0; k < K; ++k) {
        stream.fill(std::span<double>(c.x).subspan(k * m, m));
        stream.fill(std::span<double>(c.y).subspan(k * m, m));
    }
}

std::vector<CoupledLevel> couple_levels(const CoupledDraws& draws, std::span<const std::size_t> levels,
                                        CoupleOptions options) {
    const IncrementVector& inc = draws.increment;
    const CoefficientBlock& c = draws.coeffs;
    const std::size_t m = inc.dim();
    const std::size_t K = c.n;
    const std::size_t pairs = pair_count(m);
    if (m < 2) throw DimensionError("couple_levels: need m >= 2");
    for (std::size_t n : levels)
        if (n < 1 || n > K) throw ParameterError("couple_levels: level " + std::to_string(n) + " outside [1, K]");

    std::vector<std::size_t> order(levels.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return levels[a] < levels[b]; });

    std::vector<CoupledLevel> out(levels.size());

    // Ascending pass: head over k <= n, same arithmetic as truncated_area.
    {
        const double shift = std::sqrt(2.0 / inc.h);
        const double scale = inc.h / (2.0 * pi);
        Vector acc(pairs, 0.0);
        Vector z(m);
        std::size_t next = 0;
        for (std::size_t k = 1; k <= K && next < order.size(); ++k) {
            const double* x = &c.x[(k - 1) * m];
            const double* y = &c.y[(k - 1) * m];
            for (std::size_t j = 0; j < m; ++j) z[j] = y[j] - shift * inc.dw[j];
            const double inv_k = 1.0 / static_cast<double>(k);
            std::size_t r = 0;
            for (std::size_t i = 0; i + 1 < m; ++i)
                for (std::size_t j = i + 1; j < m; ++j, ++r) acc[r] += inv_k * (x[i] * z[j] - x[j] * z[i]);
            while (next < order.size() && levels[order[next]] == k) {
                CoupledLevel& lv = out[order[next]];
                lv.n = k;
                lv.head = LevyVector(m);
                for (std::size_t q = 0; q < pairs; ++q) lv.head.a[q] = acc[q] * scale;
                ++next;
            }
        }
    }

    // Descending pass: remainders over n < k <= K.
    Suffix s{Vector(m, 0.0), Vector(pairs, 0.0), FlatMatrix(m, m), {}};
    auto snapshot = [&](CoupledLevel& lv) {
        lv.tail = s.tail;
        const double c1 = std::sqrt(inc.h) / (std::numbers::sqrt2 * pi);
        const double c2 = inc.h / (2.0 * pi);
        lv.r1 = LevyVector(m);
        lv.r2 = LevyVector(m);
        std::size_t r = 0;
        for (std::size_t i = 0; i + 1 < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j, ++r) {
                lv.r1.a[r] = c1 * (inc.dw[i] * s.sx[j] - inc.dw[j] * s.sx[i]);
                lv.r2.a[r] = c2 * s.r2[r];
            }
        lv.psi1.assign(m, 0.0);
        if (s.tail.alpha > 0.0) {
            const double inv = 1.0 / std::sqrt(s.tail.alpha);
            for (std::size_t i = 0; i < m; ++i) lv.psi1[i] = inv * s.sx[i];
        }
        if (options.with_psi2) {
            lv.sigma2 = cond_cov_from_gram(s.gram).matrix;
            for (double& v : lv.sigma2.data) v *= c2 * c2;
            lv.psi2 = s.tail.alpha > 0.0 ? solve_with_root(lv.sigma2, lv.r2.a) : Vector(pairs, 0.0);
        }
    };

    std::size_t next = order.size();
    while (next > 0 && levels[order[next - 1]] == K) snapshot(out[order[--next]]);
    std::size_t stop = next > 0 ? levels[order[next - 1]] : K;
    for (std::size_t k = K; k > stop;) {
        const std::size_t chunk_end = stop;
        switch (m) {
            case 2: accumulate_suffix<2>(c, k, chunk_end, s, options.with_psi2); break;
            case 3: accumulate_suffix<3>(c, k, chunk_end, s, options.with_psi2); break;
            default: accumulate_suffix<0>(c, k, chunk_end, s, options.with_psi2); break;
        }
        k = chunk_end;
        while (next > 0 && levels[order[next - 1]] == k) snapshot(out[order[--next]]);
        stop = next > 0 ? levels[order[next - 1]] : K;
    }
    return out;
}

LevyVector coupled_truth(const CoupledLevel& level) { return level.head + level.r1 + level.r2; }

LevyVector coupled_ia(const CoupledLevel& level, const IncrementVector& inc) {
    if (level.psi2.empty()) throw ParameterError("coupled_ia: level was coupled without Psi2");
    return level.head + tail1(inc, level.tail, level.psi1) + tail2(inc.h, inc.dim(), level.tail, level.psi2);
}

LevyVector coupled_fs(const CoupledLevel& level, const IncrementVector& inc) {
    return level.head + tail1(inc, level.tail, level.psi1);
}

}  // namespace levysim
