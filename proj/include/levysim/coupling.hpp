#pragma once

// Pathwise coupling between the exact (K-mode) Lévy area and its IA / FS
// approximations. All Fourier modes k = 1..K are drawn once; for every
// requested level n the remainders over n < k <= K are formed explicitly,
// and Psi1 / Psi2 are the standard-normal vectors that reproduce them:
//
//   Psi1 = alpha_{n,K}^{-1/2} sum_k x_k / k
//   Psi2 = (Sigma^{2,(n)})^{-1/2} R2,     Sigma^{2,(n)} truncated at K.
//
// Inside this K-mode model the tail constants are the finite sums over
// (n, K], so tail1(Psi1) reproduces R1 exactly and at n == K every
// approximation coincides with the truth.

#include <cstddef>
#include <span>
#include <vector>

#include "levysim/gaussian_source.hpp"
#include "levysim/levy_sim.hpp"

namespace levysim {

struct CoupledDraws {
    IncrementVector increment;
    CoefficientBlock coeffs;  // K modes
};

/// Consumes m + 2 m K normals: V, then X_k, Y_k for k = 1..K.
CoupledDraws draw_coupled(std::size_t m, double h, std::size_t K, NormalStream& stream);

/// Same draws written into `out`, reusing its storage.
void draw_coupled(std::size_t m, double h, std::size_t K, NormalStream& stream, CoupledDraws& out);

struct CoupledLevel {
    std::size_t n = 0;
    TailConstants tail;  // sums over n < k <= K
    LevyVector head;     // modes k <= n
    LevyVector r1;
    LevyVector r2;
    Vector psi1;
    Vector psi2;         // empty unless requested
    FlatMatrix sigma2;   // M x M, empty unless requested
};

struct CoupleOptions {
    bool with_psi2 = true;
};

/// Levels must satisfy n <= K. Output is in the order of `levels`.
std::vector<CoupledLevel> couple_levels(const CoupledDraws& draws, std::span<const std::size_t> levels,
                                        CoupleOptions options = {});

LevyVector coupled_truth(const CoupledLevel& level);
LevyVector coupled_ia(const CoupledLevel& level, const IncrementVector& inc);
LevyVector coupled_fs(const CoupledLevel& level, const IncrementVector& inc);

}  // namespace levysim
