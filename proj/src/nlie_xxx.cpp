#include "tw/nlie_xxx.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace tw {

namespace {

// ln(e^t1 + e^t2), overflow-safe on the real parts.
cplx lse2(cplx t1, cplx t2) {
    const double m = std::max(t1.real(), t2.real());
    return m + std::log(std::exp(t1 - m) + std::exp(t2 - m));
}

// ln(e^z - 1), principal sheet, stable for small |z| and large Re z.  At low
// temperature beta*epsbar sweeps through several multiples of pi along the
// outer lines, so callers scanning a line must restore the correct sheet by
// continuity (the 2*pi*i ambiguity is handled in the extraction loop below).
cplx ln_expm1(cplx z) {
    if (std::abs(z) < 1e-4) return std::log(z * (1.0 + z / 2.0 + z * z / 6.0));
    return z + std::log(1.0 - std::exp(-z));
}

}  // namespace

double xxx_ground_state_energy(double J, double half_extent, int grid_points) {
    const LineGrid g(0.0, half_extent, grid_points);
    const LineFunction integ(g, [](cplx u) {
        const double v = u.real();
        return cplx(1.0 / (std::cosh(M_PI * v) * (v * v + 0.25)));
    });
    return J - J * trapezoid_integrate(integ).real();
}

XxxNlieSolution xxx_nlie_solve(const ModelParams& p, const XxxNlieOptions& opts,
                               const XxxNlieSolution* warm) {
    p.validate();
    const double beta = p.beta;
    const double J = p.J;

    double delta = opts.delta, Delta = opts.Delta;
    if (delta <= 0.0) delta = std::clamp(0.175 * 2.0 * std::abs(J) * beta, 0.1, 0.35);
    if (Delta <= 0.0) Delta = delta + 0.1;
    if (!(0.0 < delta && delta < Delta && Delta < 0.5))
        throw NumericsError(
            fmt::format("xxx_nlie_solve: contour invariant 0 < delta < Delta < 1/2 violated "
                        "(delta={}, Delta={})",
                        delta, Delta));

    const double a = 4.0 * std::pow(std::cosh(p.h * beta / 2.0), 2) - 1.0;
    const double lna = std::log(a);
    const double ln4c2 = std::log(a + 1.0);
    const double cp = 0.5 + Delta;

    const LineGrid base(0.0, opts.half_extent, opts.grid_points);
    auto grid_at = [&](double c) { return LineGrid(c, opts.half_extent, opts.grid_points); };

    auto lnq_on = [&](double c) {
        return LineFunction(grid_at(c), [&](cplx u) { return 2.0 * J * beta / (u * u + 0.25); });
    };

    LineFunction ep, em;
    if (warm != nullptr && warm->outer_plus.grid.count == opts.grid_points &&
        warm->outer_plus.grid.half_extent == opts.half_extent &&
        std::abs(warm->Delta - Delta) < 1e-12) {
        ep = warm->outer_plus;
        em = warm->outer_minus;
    } else {
        ep = LineFunction(grid_at(cp));
        em = LineFunction(grid_at(-cp));
    }

    // eps-bar continued from the outer lines to Im(u) = ct
    auto shift = [&](const LineFunction& epp, const LineFunction& emm, double ct) {
        const LineGrid tgt = grid_at(ct);
        const LineFunction up = cauchy_transform(epp, cplx(0.0, cp - ct), tgt);
        const LineFunction dn = cauchy_transform(emm, cplx(0.0, -(cp + ct)), tgt);
        LineFunction out(tgt);
        for (int k = 0; k < tgt.count; ++k) out.values[k] = up.values[k] - dn.values[k];
        return out;
    };

    const double inner[4] = {0.5 + delta, 0.5 - delta, -(0.5 - delta), -(0.5 + delta)};
    const int inner_sign[4] = {-1, +1, -1, +1};

    std::vector<LineFunction> lnq_inner;
    for (double c : inner) lnq_inner.push_back(lnq_on(c));
    const LineFunction lnq_p = lnq_on(cp), lnq_m = lnq_on(-cp);

    const double drive = 2.0 * std::log(2.0 * std::cosh(p.h * beta / 2.0));

    int it = 0;
    double change = 0.0;
    for (it = 0; it < opts.max_iter; ++it) {
        // auxiliary function xi on the four inner lines
        std::vector<LineFunction> xi;
        xi.reserve(4);
        for (int i = 0; i < 4; ++i) {
            const LineFunction e = shift(ep, em, inner[i]);
            LineFunction x(e.grid);
            for (int k = 0; k < base.count; ++k)
                x.values[k] =
                    lse2(lnq_inner[i].values[k], lna - beta * e.values[k]) - ln4c2;
            xi.push_back(std::move(x));
        }

        // closed representation ln(capital Lambda combination) on a target line
        auto rhs_at = [&](double ct) {
            const LineGrid tgt = grid_at(ct);
            LineFunction r(tgt);
            for (int k = 0; k < tgt.count; ++k) r.values[k] = drive;
            for (int i = 0; i < 4; ++i) {
                const double cs = inner[i];
                const double s = cs > 0 ? 1.0 : -1.0;
                const LineFunction c1 = cauchy_transform(xi[i], cplx(0.0, cs - ct), tgt);
                const LineFunction c2 = cauchy_transform(xi[i], cplx(0.0, cs + s - ct), tgt);
                for (int k = 0; k < tgt.count; ++k)
                    r.values[k] += static_cast<double>(inner_sign[i]) *
                                   (c1.values[k] + c2.values[k]);
            }
            return r;
        };

        // eps-bar = -(1/beta)[ln(e^L - q) - ln a], log-safe.  Pointwise the
        // logarithm is only defined up to 2*pi*i; eps-bar is smooth along the
        // line, so the sheet is fixed by continuity from the left endpoint,
        // where L -> drive and q -> 1 make the argument real and positive.
        auto extract = [&](const LineFunction& L, const LineFunction& lq) {
            LineFunction out(L.grid);
            cplx prev = 0.0;
            for (int k = 0; k < base.count; ++k) {
                cplx w = ln_expm1(L.values[k] - lq.values[k]) + lq.values[k];
                if (k > 0)
                    w -= cplx(0.0, 2.0 * M_PI *
                                       std::round((w.imag() - prev.imag()) / (2.0 * M_PI)));
                prev = w;
                out.values[k] = -(w - lna) / beta;
            }
            return out;
        };

        const LineFunction ep_new = extract(rhs_at(cp), lnq_p);
        const LineFunction em_new = extract(rhs_at(-cp), lnq_m);

        change = 0.0;
        for (int k = 0; k < base.count; ++k) {
            change = std::max(change, std::abs(ep_new.values[k] - ep.values[k]));
            change = std::max(change, std::abs(em_new.values[k] - em.values[k]));
        }
        const double al = opts.damping;
        for (int k = 0; k < base.count; ++k) {
            ep.values[k] = (1.0 - al) * ep.values[k] + al * ep_new.values[k];
            em.values[k] = (1.0 - al) * em.values[k] + al * em_new.values[k];
        }
        if (change < opts.tol) break;
    }
    if (change >= opts.tol)
        throw NumericsError(fmt::format(
            "xxx_nlie_solve: not converged after {} iterations (residual {:.2e})",
            opts.max_iter, change));

    XxxNlieSolution sol;
    sol.outer_plus = ep;
    sol.outer_minus = em;
    sol.eps0 = shift(ep, em, 0.0);
    sol.iterations = it + 1;
    sol.final_residual = change;
    sol.delta = delta;
    sol.Delta = Delta;

    // f = e0 - (1/beta) int dv ln(1 + a e^{-beta eps}) / (2 cosh pi v)
    LineFunction integ(base);
    for (int k = 0; k < base.count; ++k) {
        const double v = base.real_at(k);
        const cplx beps = 2.0 * J * beta / (v * v + 0.25) + beta * sol.eps0.values[k];
        const cplx z = a * std::exp(-beps);
        const cplx log1pz = (std::abs(z) < 1e-8) ? z - z * z / 2.0 : std::log(1.0 + z);
        integ.values[k] = log1pz / (2.0 * std::cosh(M_PI * v));
    }
    // the dressed functions themselves decay only algebraically; the grid
    // extent is validated on the sech-weighted free-energy integrand
    integ.require_decay(1e-12, "xxx free-energy integrand");
    const double eg = xxx_ground_state_energy(J, opts.half_extent, opts.grid_points);
    sol.free_energy = eg - trapezoid_integrate(integ).real() / beta;
    return sol;
}

}  // namespace tw
