// Quadrature, Cauchy line transforms and the Newton solver against analytic
// oracles (closed-form antiderivatives and residue calculus).
#include <doctest.h>

#include <cmath>

#include "tw/grid.hpp"
#include "tw/newton.hpp"

using tw::cplx;
using tw::LineFunction;
using tw::LineGrid;

TEST_CASE("trapezoid: Lorentzian against the truncated antiderivative") {
    // \int_{-V}^{V} dv / (v^2 + 1/4) = 4 atan(2V).  Note the full-line value
    // 2 pi is NOT reached at any finite extent: the truncation tail is
    // 2 * 2 atan(1/(2V)) ~ 2/V (5e-2 at V = 40), so the quadrature is tested
    // against the truncated analytic value at tight tolerance and against
    // 2 pi only at the tail scale.
    const LineGrid g(0.0, 40.0, 4001);
    const LineFunction f(g, [](cplx u) { return 1.0 / (u * u + 0.25); });
    const cplx I = tw::trapezoid_integrate(f);
    CHECK(std::abs(I - 4.0 * std::atan(80.0)) < 1e-6);
    CHECK(std::abs(I.imag()) < 1e-14);
    CHECK(std::abs(I.real() - 2.0 * M_PI) < 0.06);
}

TEST_CASE("trapezoid: sech-weighted Lorentzian equals 4 ln 2") {
    // \int dv / (cosh(pi v)(v^2 + 1/4)) = 4 ln 2; the integrand decays like
    // e^{-pi V}, so V = 24 leaves no measurable tail.
    const LineGrid g(0.0, 24.0, 1537);
    const LineFunction f(g, [](cplx u) { return 1.0 / (std::cosh(M_PI * u) * (u * u + 0.25)); });
    const cplx I = tw::trapezoid_integrate(f);
    CHECK(std::abs(I - 4.0 * std::log(2.0)) < 1e-6);
}

TEST_CASE("trapezoid: O(h^2) error decay on a kinked integrand") {
    // f(v) = |v| e^{-v^2} has a derivative jump at the node v = 0, pinning
    // the composite rule at its generic second-order rate; halving h must
    // shrink the error by at least 3.5x.
    auto f = [](cplx u) { return std::abs(u.real()) * std::exp(-u * u); };
    const double exact = 1.0 - std::exp(-36.0);
    const double e1 =
        std::abs(tw::trapezoid_integrate(LineFunction(LineGrid(0.0, 6.0, 101), f)).real() - exact);
    const double e2 =
        std::abs(tw::trapezoid_integrate(LineFunction(LineGrid(0.0, 6.0, 201), f)).real() - exact);
    CHECK(e1 / e2 >= 3.5);
}

TEST_CASE("cosh_convolve: unit function integrates the kernel to 1/2") {
    // \int dv / (2 cosh pi(u - v)) = 1/2 for every u.
    const LineGrid g(0.0, 24.0, 1537);
    const LineFunction one(g, [](cplx) { return cplx(1.0); });
    for (double u : {0.0, 0.7, -2.3}) {
        const cplx I = tw::cosh_convolve(one, u);
        CHECK(std::abs(I - 0.5) < 1e-8);
    }
}

TEST_CASE("cosh_convolve: driving term reproduces 4 ln 2 at the origin") {
    const LineGrid g(0.0, 24.0, 1537);
    const LineFunction f(g, [](cplx u) { return 2.0 / (u * u + 0.25); });
    CHECK(std::abs(tw::cosh_convolve(f, 0.0) - 4.0 * std::log(2.0)) < 1e-6);
}

TEST_CASE("cosh_convolve: positive kernel preserves positivity and reality") {
    const LineGrid g(0.0, 24.0, 1537);
    const LineFunction f(g, [](cplx u) { return std::exp(-0.3 * u * u); });
    for (double u : {-1.0, 0.0, 2.5}) {
        const cplx I = tw::cosh_convolve(f, u);
        CHECK(I.real() > 0.0);
        CHECK(std::abs(I.imag()) < 1e-14);
    }
}

TEST_CASE("cauchy_transform: residue-calculus oracle") {
    // f(v) = 1/(v^2 + 1) on the real line with kernel offset -0.3i:
    //   g(u) = (1/2 pi i) \int dv f(v)/(u - v + 0.3i).
    // Closing upward through the poles v = i and v = u + 0.3i leaves the
    // single term g(u) = (1/2i) / (u + 0.3i + i).
    const LineGrid g(0.0, 40.0, 6401);
    const LineFunction f(g, [](cplx u) { return 1.0 / (u * u + 1.0); });
    const LineFunction out = tw::cauchy_transform(f, cplx(0.0, -0.3), g);
    for (double u : {0.0, 0.4, -0.4}) {
        const int k = static_cast<int>(std::lround((u + g.half_extent) / g.spacing()));
        const cplx expect = 1.0 / (cplx(0.0, 2.0) * (cplx(u, 0.0) + cplx(0.0, 1.3)));
        CHECK(std::abs(out.values[k] - expect) < 1e-6);
    }
}

TEST_CASE("cauchy_transform: linearity") {
    const LineGrid g(0.0, 24.0, 769);
    const LineFunction f1(g, [](cplx u) { return 1.0 / (u * u + 1.0); });
    const LineFunction f2(g, [](cplx u) { return std::exp(-u * u); });
    LineFunction comb(g);
    for (int k = 0; k < g.count; ++k) comb.values[k] = 2.5 * f1.values[k] + f2.values[k];
    const cplx off(0.0, -0.4);
    const LineFunction g1 = tw::cauchy_transform(f1, off, g);
    const LineFunction g2 = tw::cauchy_transform(f2, off, g);
    const LineFunction gc = tw::cauchy_transform(comb, off, g);
    double worst = 0.0;
    for (int k = 0; k < g.count; ++k)
        worst = std::max(worst, std::abs(gc.values[k] - 2.5 * g1.values[k] - g2.values[k]));
    CHECK(worst < 1e-12);
}

TEST_CASE("cauchy_transform: zero input gives zero output") {
    const LineGrid g(0.0, 24.0, 257);
    const LineFunction zero(g);
    const LineFunction out = tw::cauchy_transform(zero, cplx(0.0, -0.2), g);
    for (const cplx& v : out.values) CHECK(std::abs(v) == 0.0);
}

TEST_CASE("cauchy_transform: on-line pole is rejected") {
    const LineGrid g(0.0, 24.0, 257);
    const LineFunction f(g, [](cplx u) { return 1.0 / (u * u + 1.0); });
    CHECK_THROWS_AS(tw::cauchy_transform(f, cplx(0.0, 0.0), g), tw::NumericsError);
}

TEST_CASE("newton: scalar linear and complex quadratic systems") {
    auto lin = [](const std::vector<cplx>& x) { return std::vector<cplx>{x[0] - 1.0}; };
    const auto r1 = tw::newton_solve_system(lin, {cplx(0.0)});
    CHECK(std::abs(r1[0] - 1.0) < 1e-12);

    // x^2 + 1 = 0 from 0.5i converges to +i (the basin of the upper root)
    auto quad = [](const std::vector<cplx>& x) { return std::vector<cplx>{x[0] * x[0] + 1.0}; };
    const auto r2 = tw::newton_solve_system(quad, {cplx(0.0, 0.5)});
    CHECK(std::abs(r2[0] - cplx(0.0, 1.0)) < 1e-12);
}

TEST_CASE("newton: non-convergence throws") {
    // x^2 + 1 = 0 started on the real axis oscillates forever (the real line
    // is the Julia-set boundary between the two basins)
    auto quad = [](const std::vector<cplx>& x) { return std::vector<cplx>{x[0] * x[0] + 1.0}; };
    CHECK_THROWS_AS(tw::newton_solve_system(quad, {cplx(0.37)}, 1e-12, 40), tw::NumericsError);
}
