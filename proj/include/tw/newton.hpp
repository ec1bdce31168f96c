// Damped Newton iteration for square systems of complex-analytic equations,
// used to solve the Bethe-ansatz root systems.
#pragma once

#include <functional>
#include <vector>

#include "tw/grid.hpp"

namespace tw {

struct NewtonOptions {
    double tol = 1e-12;      // sup-norm residual target
    int max_iter = 100;
    double fd_step = 1e-7;   // forward-difference step for the Jacobian
};

// Solves residual(x) = 0 with a finite-difference Jacobian (the residuals we
// feed it are holomorphic, so a real-direction difference approximates the
// complex derivative).  Throws NumericsError on non-convergence or a
// numerically singular Jacobian.
std::vector<cplx> newton_solve_system(
    const std::function<std::vector<cplx>(const std::vector<cplx>&)>& residual,
    std::vector<cplx> x0, double tol = 1e-12, int max_iter = 100);

std::vector<cplx> newton_solve_system(
    const std::function<std::vector<cplx>(const std::vector<cplx>&)>& residual,
    std::vector<cplx> x0, const NewtonOptions& opts);

}  // namespace tw
