#include "tw/newton.hpp"

#include <cmath>

#include <Eigen/Dense>
#include <fmt/format.h>

namespace tw {

namespace {

double sup_norm(const std::vector<cplx>& v) {
    double m = 0.0;
    for (const cplx& z : v) m = std::max(m, std::abs(z));
    return m;
}

}  // namespace

std::vector<cplx> newton_solve_system(
    const std::function<std::vector<cplx>(const std::vector<cplx>&)>& residual,
    std::vector<cplx> x0, const NewtonOptions& opts) {
    const int n = static_cast<int>(x0.size());
    std::vector<cplx> x = std::move(x0);
    std::vector<cplx> r = residual(x);
    if (static_cast<int>(r.size()) != n)
        throw NumericsError("newton_solve_system: residual/x dimension mismatch");

    double rnorm = sup_norm(r);
    for (int iter = 0; iter < opts.max_iter; ++iter) {
        if (rnorm < opts.tol) return x;

        // Finite-difference Jacobian, column by column.
        Eigen::MatrixXcd J(n, n);
        const double h = opts.fd_step;
        for (int j = 0; j < n; ++j) {
            std::vector<cplx> xp = x;
            xp[j] += h;
            const std::vector<cplx> rp = residual(xp);
            for (int i = 0; i < n; ++i) J(i, j) = (rp[i] - r[i]) / h;
        }

        Eigen::VectorXcd rhs(n);
        for (int i = 0; i < n; ++i) rhs(i) = -r[i];
        Eigen::PartialPivLU<Eigen::MatrixXcd> lu(J);
        const Eigen::VectorXcd dx = lu.solve(rhs);
        if (!dx.allFinite() || (J * dx - rhs).norm() > 1e-6 * (rhs.norm() + 1.0)) {
            throw NumericsError(fmt::format(
                "newton_solve_system: singular Jacobian at iteration {} (residual {:.3e})",
                iter, rnorm));
        }

        // Backtracking line search keeps the step from overshooting.
        double step = 1.0;
        for (int tries = 0; tries < 30; ++tries) {
            std::vector<cplx> xn = x;
            for (int i = 0; i < n; ++i) xn[i] += step * dx(i);
            std::vector<cplx> rn = residual(xn);
            const double rn_norm = sup_norm(rn);
            if (rn_norm < rnorm || rn_norm < opts.tol) {
                x = std::move(xn);
                r = std::move(rn);
                rnorm = rn_norm;
                break;
            }
            step *= 0.5;
            if (tries == 29) {
                // No descent direction found; take the full step anyway and
                // let the outer residual check decide.
                for (int i = 0; i < n; ++i) x[i] += dx(i);
                r = residual(x);
                rnorm = sup_norm(r);
            }
        }
    }
    if (rnorm < opts.tol) return x;
    throw NumericsError(fmt::format(
        "newton_solve_system: no convergence after {} iterations (residual {:.3e})",
        opts.max_iter, rnorm));
}

std::vector<cplx> newton_solve_system(
    const std::function<std::vector<cplx>(const std::vector<cplx>&)>& residual,
    std::vector<cplx> x0, double tol, int max_iter) {
    NewtonOptions opts;
    opts.tol = tol;
    opts.max_iter = max_iter;
    return newton_solve_system(residual, std::move(x0), opts);
}

}  // namespace tw
