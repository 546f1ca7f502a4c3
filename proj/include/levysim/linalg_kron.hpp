#pragma once

// Index-level vec/mat, Kronecker, commutation and selection operators.
//
// All matrices are stored column-major so that `FlatMatrix::data` is exactly
// vec(B). The commutation matrix P_m and the selection matrix H_m are never
// formed; only their action on vectors of length m*m is provided.

#include <cstddef>
#include <span>
#include <vector>

namespace levysim {

using Vector = std::vector<double>;

struct FlatMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    Vector data;  // column-major, data.size() == rows * cols

    FlatMatrix() = default;
    FlatMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    static FlatMatrix identity(std::size_t n);

    double& operator()(std::size_t i, std::size_t j) { return data[j * rows + i]; }
    double operator()(std::size_t i, std::size_t j) const { return data[j * rows + i]; }

    bool operator==(const FlatMatrix&) const = default;
};

FlatMatrix transpose(const FlatMatrix& b);
FlatMatrix multiply(const FlatMatrix& a, const FlatMatrix& b);
double frobenius_norm(const FlatMatrix& a);

/// Column-major flattening.
Vector vec_of(const FlatMatrix& b);

/// Inverse of vec_of. Throws DimensionError if v.size() != rows * cols.
FlatMatrix mat_of(std::span<const double> v, std::size_t rows, std::size_t cols);

FlatMatrix kron(const FlatMatrix& b, const FlatMatrix& c);

/// u ⊗ w for column vectors.
Vector kron(std::span<const double> u, std::span<const double> w);

/// P_m v. For v = vec(B) this is vec(B^T).
Vector apply_commutation(std::span<const double> v, std::size_t m);

/// H_m v: strictly lower triangle of mat(v) in vec order.
Vector select_lower(std::span<const double> v, std::size_t m);

/// (I - P_m) H_m^T a. The result is vec of an antisymmetric matrix.
Vector embed_antisym(std::span<const double> a, std::size_t m);

/// M = m(m-1)/2.
constexpr std::size_t pair_count(std::size_t m) { return m * (m - (m > 0 ? 1 : 0)) / 2; }

/// Zero-based pair (i, j), i < j, and its position r in the order
/// (0,1), (0,2), ..., (0,m-1), (1,2), ..., (m-2,m-1).
struct PairIndex {
    std::size_t i = 0;
    std::size_t j = 0;
    std::size_t r = 0;
};

std::size_t pair_to_index(std::size_t i, std::size_t j, std::size_t m);
PairIndex index_to_pair(std::size_t r, std::size_t m);

/// Symmetric square root of a symmetric positive semi-definite matrix via
/// eigendecomposition. Eigenvalues in [-1e-10 * ||S||_2, 0) are clamped to 0;
/// anything more negative, or asymmetry above 1e-10 (relative), throws
/// MatrixError.
FlatMatrix sym_psd_sqrt(const FlatMatrix& s);

}  // namespace levysim
