#pragma once

// Conditional covariance of the second remainder given the tail
// coefficients: the M x M matrix H_m Sigma(x) H_m^T, built two ways.

#include <cstddef>
#include <span>
#include <vector>

#include "levysim/linalg_kron.hpp"

namespace levysim {

struct CondCov {
    std::size_t m = 0;
    FlatMatrix matrix;  // M x M
};

/// G G^T with G = H_m (x ⊗ I_m - I_m ⊗ x), G assembled column by column
/// from Kronecker vectors and the selection operator.
CondCov cond_cov_direct(std::span<const double> x);

/// Assembly from the explicit diagonal blocks B_{l,l} and the off-diagonal
/// blocks B_{r,s} = (0; -b_{r,s}; d_{r,s}), with B_{s,r} = B_{r,s}^T.
CondCov cond_cov_blocks(std::span<const double> x);

/// The same linear map applied to a symmetric m x m second-moment matrix
/// S (so that cond_cov_from_gram(x x^T) == cond_cov_direct(x)).
CondCov cond_cov_from_gram(const FlatMatrix& gram);

/// (h^2 / 4 pi^2) sum_{k=n+1}^{K} k^-2 cond_cov(x_k), with xs[k - n - 1] = x_k.
/// A finite truncation of the almost-surely convergent series; K == n gives 0.
CondCov sigma2_truncated(double h, std::size_t m, std::size_t n, std::size_t K, std::span<const Vector> xs);

/// Scale s with Sigma^{2,inf} = s I_M, s = (h^2 / 2 pi^2) alpha_n.
double sigma2_inf(double h, std::size_t n, std::size_t m);

/// sum_q E|(Sigma^{2,(n)} - Sigma^{2,inf})_{r,q}|^2 for any row r.
double sigma2_row_deviation(std::size_t m, double h, std::size_t n);

/// E ||Sigma^{2,(n)} - Sigma^{2,inf}||_F^2.
double sigma2_frobenius_deviation(std::size_t m, double h, std::size_t n);

}  // namespace levysim
