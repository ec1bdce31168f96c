// Nonlinear integral equations for the spin-1/2 isotropic Heisenberg chain.
//
// The Trotter limit of the t-W hierarchy closes on a single auxiliary
// function: the dressed energy eps-bar(u), analytic and decaying in the strip
// around the real axis once the bare driving 2J beta/(u^2 + 1/4) is split
// off.  The solver stores eps-bar on the two outer lines Im(u) = +-(1/2 +
// Delta), Cauchy-shifts it to the four inner contour lines Im(u) =
// +-(1/2 +- delta), evaluates the auxiliary combination
//   xi = ln[(q + a e^{-beta eps-bar}) / (a + 1)],   a = 4 cosh^2(h beta/2) - 1
// there, and maps it back through the closed four-term integral
// representation.  The free energy per site follows from a sech-kernel
// integral of eps-bar continued to the real axis.
#pragma once

#include "tw/grid.hpp"
#include "tw/params.hpp"

namespace tw {

struct XxxNlieOptions {
    // Contour geometry: inner half-width delta and outer offset Delta with
    // 0 < delta < Delta < 1/2.  Non-positive values select the adaptive
    // default delta = clamp(0.175 * 2|J|beta, 0.1, 0.35), Delta = delta + 0.1
    // (the optimal width tracks the extent ~2J beta/pi of the argument zeros
    // of the auxiliary function above Im(u) = 1/2).
    double delta = 0.0;
    double Delta = 0.0;
    double half_extent = 24.0;
    int grid_points = 1537;
    double tol = 1e-10;
    int max_iter = 500;
    double damping = 0.5;
};

struct XxxNlieSolution {
    LineFunction outer_plus;   // eps-bar on Im(u) = +(1/2 + Delta)
    LineFunction outer_minus;  // eps-bar on Im(u) = -(1/2 + Delta)
    LineFunction eps0;         // eps-bar continued to the real axis
    double free_energy = 0.0;
    int iterations = 0;
    double final_residual = 0.0;
    double delta = 0.0;
    double Delta = 0.0;
};

// Solve the NLIE at (T, h).  An optional warm start reuses the outer-line
// state of a previous solution (same grid and Delta required); descending-T
// sweeps converge substantially faster this way.
XxxNlieSolution xxx_nlie_solve(const ModelParams& p, const XxxNlieOptions& opts = {},
                               const XxxNlieSolution* warm = nullptr);

// Ground-state energy per site e0 = J - J * integral dv / (cosh(pi v)(v^2+1/4))
// evaluated on the solver grid; the closed form is (1 - 4 ln 2) J.
double xxx_ground_state_energy(double J, double half_extent = 24.0, int grid_points = 1537);

}  // namespace tw
