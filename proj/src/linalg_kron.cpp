#include "levysim/linalg_kron.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "levysim/errors.hpp"

namespace levysim {

namespace {

void require_square_length(std::size_t len, std::size_t m, const char* op) {
    if (len != m * m) {
        throw DimensionError(std::string(op) + ": expected length " + std::to_string(m * m) + ", got " +
                             std::to_string(len));
    }
}

}  // namespace

FlatMatrix FlatMatrix::identity(std::size_t n) {
    FlatMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) out(i, i) = 1.0;
    return out;
}

FlatMatrix transpose(const FlatMatrix& b) {
    FlatMatrix out(b.cols, b.rows);
    for (std::size_t j = 0; j < b.cols; ++j)
        for (std::size_t i = 0; i < b.rows; ++i) out(j, i) = b(i, j);
    return out;
}

FlatMatrix multiply(const FlatMatrix& a, const FlatMatrix& b) {
    if (a.cols != b.rows) throw DimensionError("multiply: inner dimensions differ");
    FlatMatrix out(a.rows, b.cols);
    for (std::size_t j = 0; j < b.cols; ++j)
        for (std::size_t l = 0; l < a.cols; ++l) {
            const double blj = b(l, j);
            if (blj == 0.0) continue;
            for (std::size_t i = 0; i < a.rows; ++i) out(i, j) += a(i, l) * blj;
        }
    return out;
}

double frobenius_norm(const FlatMatrix& a) {
    double s = 0.0;
    for (double v : a.data) s += v * v;
    return std::sqrt(s);
}

Vector vec_of(const FlatMatrix& b) { return b.data; }

FlatMatrix mat_of(std::span<const double> v, std::size_t rows, std::size_t cols) {
    if (v.size() != rows * cols) {
        throw DimensionError("mat_of: length " + std::to_string(v.size()) + " != " + std::to_string(rows) +
                             "*" + std::to_string(cols));
    }
    FlatMatrix out(rows, cols);
    std::copy(v.begin(), v.end(), out.data.begin());
    return out;
}

FlatMatrix kron(const FlatMatrix& b, const FlatMatrix& c) {
    FlatMatrix out(b.rows * c.rows, b.cols * c.cols);
    for (std::size_t bj = 0; bj < b.cols; ++bj)
        for (std::size_t cj = 0; cj < c.cols; ++cj) {
            const std::size_t col = bj * c.cols + cj;
            for (std::size_t bi = 0; bi < b.rows; ++bi) {
                const double bv = b(bi, bj);
                for (std::size_t ci = 0; ci < c.rows; ++ci) out(bi * c.rows + ci, col) = bv * c(ci, cj);
            }
        }
    return out;
}

Vector kron(std::span<const double> u, std::span<const double> w) {
    Vector out(u.size() * w.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t k = 0; k < w.size(); ++k) out[i * w.size() + k] = u[i] * w[k];
    return out;
}

Vector apply_commutation(std::span<const double> v, std::size_t m) {
    require_square_length(v.size(), m, "apply_commutation");
    // entry (i, j) of mat(v) sits at j*m + i and moves to i*m + j
    Vector out(v.size());
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t i = 0; i < m; ++i) out[i * m + j] = v[j * m + i];
    return out;
}

Vector select_lower(std::span<const double> v, std::size_t m) {
    require_square_length(v.size(), m, "select_lower");
    Vector out;
    out.reserve(pair_count(m));
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t i = j + 1; i < m; ++i) out.push_back(v[j * m + i]);
    return out;
}

Vector embed_antisym(std::span<const double> a, std::size_t m) {
    if (a.size() != pair_count(m)) {
        throw DimensionError("embed_antisym: expected length " + std::to_string(pair_count(m)) + ", got " +
                             std::to_string(a.size()));
    }
    Vector out(m * m, 0.0);
    std::size_t r = 0;
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t i = j + 1; i < m; ++i, ++r) {
            out[j * m + i] += a[r];
            out[i * m + j] -= a[r];
        }
    return out;
}

std::size_t pair_to_index(std::size_t i, std::size_t j, std::size_t m) {
    if (i >= j || j >= m) {
        throw IndexError("pair_to_index: need i < j < m, got (" + std::to_string(i) + ", " + std::to_string(j) +
                         ") with m = " + std::to_string(m));
    }
    return i * m + j - (i + 1) * (i + 2) / 2;
}

PairIndex index_to_pair(std::size_t r, std::size_t m) {
    if (r >= pair_count(m)) {
        throw IndexError("index_to_pair: r = " + std::to_string(r) + " out of range for m = " + std::to_string(m));
    }
    std::size_t i = 0;
    std::size_t row_start = 0;
    while (row_start + (m - 1 - i) <= r) {
        row_start += m - 1 - i;
        ++i;
    }
    return {i, i + 1 + (r - row_start), r};
}

FlatMatrix sym_psd_sqrt(const FlatMatrix& s) {
    if (s.rows != s.cols) throw DimensionError("sym_psd_sqrt: matrix is not square");
    const std::size_t q = s.rows;
    if (q == 0) return s;

    double scale = 0.0;
    for (double v : s.data) scale = std::max(scale, std::abs(v));
    for (std::size_t j = 0; j < q; ++j)
        for (std::size_t i = j + 1; i < q; ++i)
            if (std::abs(s(i, j) - s(j, i)) > 1e-10 * scale) throw MatrixError("sym_psd_sqrt: matrix is not symmetric");

    Eigen::Map<const Eigen::MatrixXd> in(s.data.data(), static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(q));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(in);
    if (eig.info() != Eigen::Success) throw MatrixError("sym_psd_sqrt: eigendecomposition failed");

    Eigen::VectorXd lambda = eig.eigenvalues();
    const double norm2 = lambda.cwiseAbs().maxCoeff();
    for (Eigen::Index k = 0; k < lambda.size(); ++k) {
        if (lambda[k] < -1e-10 * norm2) throw MatrixError("sym_psd_sqrt: matrix is not positive semi-definite");
        lambda[k] = std::sqrt(std::max(lambda[k], 0.0));
    }
    const Eigen::MatrixXd& u = eig.eigenvectors();
    Eigen::MatrixXd root = u * lambda.asDiagonal() * u.transpose();
    root = (0.5 * (root + root.transpose())).eval();

    FlatMatrix out(q, q);
    Eigen::Map<Eigen::MatrixXd>(out.data.data(), static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(q)) = root;
    return out;
}

}  // namespace levysim
