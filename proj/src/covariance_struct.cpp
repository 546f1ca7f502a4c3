#include "levysim/covariance_struct.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "levysim/errors.hpp"
#include "levysim/levy_sim.hpp"

namespace levysim {

namespace {

using std::numbers::pi;

void require_dim(std::size_t m, const char* what) {
    if (m < 2) throw DimensionError(std::string(what) + ": need m >= 2");
}

}  // namespace

CondCov cond_cov_direct(std::span<const double> x) {
    const std::size_t m = x.size();
    require_dim(m, "cond_cov_direct");
    const std::size_t pairs = pair_count(m);

    FlatMatrix g(pairs, m);
    Vector e(m, 0.0);
    for (std::size_t c = 0; c < m; ++c) {
        e[c] = 1.0;
        Vector col = kron(x, e);
        const Vector rhs = kron(e, x);
        for (std::size_t t = 0; t < col.size(); ++t) col[t] -= rhs[t];
        const Vector sel = select_lower(col, m);
        for (std::size_t r = 0; r < pairs; ++r) g(r, c) = sel[r];
        e[c] = 0.0;
    }
    return {m, multiply(g, transpose(g))};
}

CondCov cond_cov_blocks(std::span<const double> x) {
    const std::size_t m = x.size();
    require_dim(m, "cond_cov_blocks");
    FlatMatrix out(pair_count(m), pair_count(m));

    // Block l collects the pairs (l, l+1), ..., (l, m-1).
    auto offset = [m](std::size_t l) { return pair_to_index(l, l + 1, m); };

    for (std::size_t l = 0; l + 1 < m; ++l) {
        const std::size_t o = offset(l);
        for (std::size_t a = l + 1; a < m; ++a)
            for (std::size_t b = l + 1; b < m; ++b)
                out(o + a - l - 1, o + b - l - 1) = a == b ? x[l] * x[l] + x[a] * x[a] : x[a] * x[b];
    }

    for (std::size_t r = 0; r + 1 < m; ++r) {
        for (std::size_t s = r + 1; s + 1 < m; ++s) {
            const std::size_t ro = offset(r);
            const std::size_t so = offset(s);
            // Rows of B_{r,s} are indexed by a in (r, m), columns by b in (s, m).
            // Rows a < s are zero, row a == s is -x_r x_b, rows a > s carry x_r x_s on the diagonal b == a.
            for (std::size_t b = s + 1; b < m; ++b) {
                const double v = -x[r] * x[b];
                out(ro + s - r - 1, so + b - s - 1) = v;
                out(so + b - s - 1, ro + s - r - 1) = v;
            }
            for (std::size_t a = s + 1; a < m; ++a) {
                const double v = x[r] * x[s];
                out(ro + a - r - 1, so + a - s - 1) = v;
                out(so + a - s - 1, ro + a - r - 1) = v;
            }
        }
    }
    return {m, out};
}

CondCov cond_cov_from_gram(const FlatMatrix& gram) {
    if (gram.rows != gram.cols) throw DimensionError("cond_cov_from_gram: matrix must be square");
    const std::size_t m = gram.rows;
    require_dim(m, "cond_cov_from_gram");
    const std::size_t pairs = pair_count(m);
    FlatMatrix out(pairs, pairs);

    // Row (i,j) of G is x_i e_j - x_j e_i; the inner product of rows (i,j) and (k,l)
    // is S_ik [j=l] - S_il [j=k] - S_jk [i=l] + S_jl [i=k].
    for (std::size_t p = 0; p < pairs; ++p) {
        const PairIndex u = index_to_pair(p, m);
        for (std::size_t q = p; q < pairs; ++q) {
            const PairIndex v = index_to_pair(q, m);
            double s = 0.0;
            if (u.j == v.j) s += gram(u.i, v.i);
            if (u.j == v.i) s -= gram(u.i, v.j);
            if (u.i == v.j) s -= gram(u.j, v.i);
            if (u.i == v.i) s += gram(u.j, v.j);
            out(p, q) = s;
            out(q, p) = s;
        }
    }
    return {m, out};
}

CondCov sigma2_truncated(double h, std::size_t m, std::size_t n, std::size_t K, std::span<const Vector> xs) {
    require_dim(m, "sigma2_truncated");
    if (!(h > 0.0) || !std::isfinite(h)) throw ParameterError("sigma2_truncated: step size must be positive");
    if (n < 1 || K < n) throw ParameterError("sigma2_truncated: need K >= n >= 1");
    if (xs.size() != K - n) {
        throw DimensionError("sigma2_truncated: expected " + std::to_string(K - n) + " coefficient vectors");
    }

    FlatMatrix gram(m, m);
    for (std::size_t k = K; k > n; --k) {
        const Vector& x = xs[k - n - 1];
        if (x.size() != m) throw DimensionError("sigma2_truncated: coefficient vector has wrong length");
        const double w = 1.0 / (static_cast<double>(k) * static_cast<double>(k));
        for (std::size_t b = 0; b < m; ++b)
            for (std::size_t a = 0; a < m; ++a) gram(a, b) += w * x[a] * x[b];
    }
    CondCov out = cond_cov_from_gram(gram);
    const double scale = h * h / (4.0 * pi * pi);
    for (double& v : out.matrix.data) v *= scale;
    return out;
}

double sigma2_inf(double h, std::size_t n, std::size_t m) {
    require_dim(m, "sigma2_inf");
    if (!(h > 0.0) || !std::isfinite(h)) throw ParameterError("sigma2_inf: step size must be positive");
    if (n < 1) throw ParameterError("sigma2_inf: truncation level must be at least 1");
    return h * h / (2.0 * pi * pi) * tail_constants(n).alpha;
}

double sigma2_row_deviation(std::size_t m, double h, std::size_t n) {
    require_dim(m, "sigma2_row_deviation");
    if (n < 1) throw ParameterError("sigma2_row_deviation: truncation level must be at least 1");
    const double h4 = h * h * h * h;
    return h4 * static_cast<double>(m) / (8.0 * std::pow(pi, 4)) * tail_constants(n).beta;
}

double sigma2_frobenius_deviation(std::size_t m, double h, std::size_t n) {
    require_dim(m, "sigma2_frobenius_deviation");
    // h^4 m^2 (m-1) / (16 pi^4) beta_n, i.e. M times the row statistic
    return static_cast<double>(pair_count(m)) * sigma2_row_deviation(m, h, n);
}

}  // namespace levysim
