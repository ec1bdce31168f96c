// Nonlinear integral equations for the SU(3)-invariant chain.
//
// The hierarchy closes on four auxiliary dressed functions: eps1 and eps4
// live around Im(u) = +-1 (level 2), eps2 and eps3 around Im(u) = +-1/2
// (level 1).  eps2, eps3 are stored on the outer lines +-(1/2 + Delta) and
// Cauchy-shifted to the level-1 inner contour +-(1/2 +- d1); eps1 and eps4
// are stored on +-(1 + Delta), but eps1 has poles at +-i and cannot be
// shifted across them, so its values on the level-2 inner lines
// +-(1 +- d2) are carried as additional state updated directly from the
// integral representation.
//
// Free energy convention: the engine Hamiltonian is traceless,
// H = 2J sum_k (P_{k,k+1} - 1/3) + (h/2) sum_k S^z_k, so the result is the
// permutation-convention value shifted by -2J/3.
#pragma once

#include <array>

#include "tw/grid.hpp"
#include "tw/params.hpp"

namespace tw {

struct Su3NlieOptions {
    // Inner contour half-widths: d1 around +-i/2, d2 around +-i.  Non-positive
    // d1 selects the adaptive default d1 = clamp(0.25 * 2|J|beta, 0.05, 0.1);
    // non-positive d2 selects d2 = 2 d1.  Delta is the outer-line offset
    // (must exceed both half-widths).
    double d1 = 0.0;
    double d2 = 0.0;
    double Delta = 0.25;
    double half_extent = 24.0;
    int grid_points = 3073;
    double tol = 1e-10;
    int max_iter = 500;
    double damping = 0.5;
};

struct Su3NlieSolution {
    // Outer-line state: eps2, eps3 on +-(1/2 + Delta); eps1, eps4 on
    // +-(1 + Delta); eps1 additionally on the four level-2 inner lines
    // (order: 1+d2, 1-d2, -(1-d2), -(1+d2)).
    LineFunction e2p, e2m, e3p, e3m;
    LineFunction e1p, e1m, e4p, e4m;
    std::array<LineFunction, 4> e1_inner;
    LineFunction eps2_0, eps3_0;  // eps2, eps3 continued to the real axis
    double free_energy = 0.0;     // traceless convention
    int iterations = 0;
    double final_residual = 0.0;
    double d1 = 0.0, d2 = 0.0, Delta = 0.0;
};

Su3NlieSolution su3_nlie_solve(const ModelParams& p, const Su3NlieOptions& opts = {},
                               const Su3NlieSolution* warm = nullptr);

}  // namespace tw
