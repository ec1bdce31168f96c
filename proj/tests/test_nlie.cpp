// Nonlinear-integral-equation solvers: frozen Trotter-extrapolated reference
// values, exact symmetries of the solution, and warm-start behaviour.
#include <doctest.h>

#include <cmath>

#include "tw/nlie_su3.hpp"
#include "tw/nlie_xxx.hpp"

using tw::cplx;

TEST_CASE("XXX NLIE: frozen reference free energies at h = 0") {
    // references: Richardson extrapolation of the Trotter-exact Bethe-ansatz
    // sequence f(M) at M = 50/100/200
    const tw::XxxNlieSolution s1 = tw::xxx_nlie_solve({1.0, 0.0, 1.0});
    CHECK(s1.free_energy == doctest::Approx(-1.8605588).epsilon(2e-5 / 1.86));
    CHECK(s1.final_residual <= 1e-10);

    const tw::XxxNlieSolution s5 = tw::xxx_nlie_solve({1.0, 0.0, 0.2});
    CHECK(s5.free_energy == doctest::Approx(-3.791714579).epsilon(2e-5 / 3.79));
}

TEST_CASE("XXX NLIE: solution symmetries") {
    const tw::XxxNlieSolution s = tw::xxx_nlie_solve({1.0, 0.4, 0.8});
    const int n = s.outer_plus.grid.count;
    double conj_dev = 0.0, parity_dev = 0.0, real_dev = 0.0;
    for (int k = 0; k < n; ++k) {
        // Schwarz reflection: eps-bar on the lower line is the conjugate of
        // eps-bar on the upper line at the mirrored node
        conj_dev = std::max(conj_dev,
                            std::abs(s.outer_minus.values[k] - std::conj(s.outer_plus.values[k])));
        // parity: eps-bar(-u) = eps-bar(conj(u)) on a horizontal line means
        // values reversed equal values conjugated
        parity_dev = std::max(
            parity_dev,
            std::abs(s.outer_plus.values[n - 1 - k] - std::conj(s.outer_plus.values[k])));
        real_dev = std::max(real_dev, std::abs(s.eps0.values[k].imag()));
    }
    CHECK(conj_dev < 1e-9);
    CHECK(parity_dev < 1e-9);
    CHECK(real_dev < 1e-9);
}

TEST_CASE("XXX NLIE: field parity of the free energy") {
    const double fp = tw::xxx_nlie_solve({1.0, 0.7, 0.9}).free_energy;
    const double fm = tw::xxx_nlie_solve({1.0, -0.7, 0.9}).free_energy;
    CHECK(std::abs(fp - fm) < 1e-10);
}

TEST_CASE("XXX NLIE: warm start accelerates and agrees") {
    // both temperatures sit in the clamped-contour regime (delta = 0.35), so
    // the warm state is geometry-compatible and actually reused
    const tw::XxxNlieSolution hot = tw::xxx_nlie_solve({1.0, 0.0, 1.0});
    const tw::XxxNlieSolution cold = tw::xxx_nlie_solve({1.0, 0.0, 1.25});
    const tw::XxxNlieSolution warm = tw::xxx_nlie_solve({1.0, 0.0, 1.25}, {}, &hot);
    CHECK(std::abs(warm.free_energy - cold.free_energy) < 1e-9);
    CHECK(warm.iterations < cold.iterations);
}

TEST_CASE("XXX NLIE: invalid contour geometry is rejected") {
    tw::XxxNlieOptions opts;
    opts.delta = 0.3;
    opts.Delta = 0.2;  // must exceed delta
    CHECK_THROWS_AS(tw::xxx_nlie_solve({1.0, 0.0, 1.0}, opts), tw::NumericsError);
}

TEST_CASE("XXX ground-state energy quadrature") {
    CHECK(tw::xxx_ground_state_energy(1.0) ==
          doctest::Approx(1.0 - 4.0 * std::log(2.0)).epsilon(1e-6));
}

TEST_CASE("SU(3) NLIE: frozen exact-diagonalization cross-check at T = 5") {
    // ed_free_energy_su3(8, 5, 0, 1) = -5.861822411; at T = 5 the L = 8
    // finite-size error is far below the tolerance used here
    const tw::Su3NlieSolution s = tw::su3_nlie_solve({1.0, 0.0, 0.2});
    CHECK(s.free_energy == doctest::Approx(-5.861822411).epsilon(5e-5 / 5.86));
    CHECK(s.final_residual <= 1e-10);
}

TEST_CASE("SU(3) NLIE: field parity and solution symmetries") {
    const tw::Su3NlieSolution sp = tw::su3_nlie_solve({1.0, 0.5, 0.25});
    const tw::Su3NlieSolution sm = tw::su3_nlie_solve({1.0, -0.5, 0.25});
    CHECK(std::abs(sp.free_energy - sm.free_energy) < 1e-9);

    const int n = sp.e2p.grid.count;
    double conj_dev = 0.0;
    for (int k = 0; k < n; ++k) {
        conj_dev = std::max(conj_dev, std::abs(sp.e2m.values[k] - std::conj(sp.e2p.values[k])));
        conj_dev = std::max(conj_dev, std::abs(sp.e1m.values[k] - std::conj(sp.e1p.values[k])));
    }
    CHECK(conj_dev < 1e-8);
}

TEST_CASE("SU(3) NLIE: warm start agrees with the cold solve") {
    // both in the clamped regime d1 = 0.1 so the warm geometry matches
    const tw::Su3NlieSolution hot = tw::su3_nlie_solve({1.0, 0.0, 0.25});
    const tw::Su3NlieSolution cold = tw::su3_nlie_solve({1.0, 0.0, 0.3});
    const tw::Su3NlieSolution warm = tw::su3_nlie_solve({1.0, 0.0, 0.3}, {}, &hot);
    CHECK(std::abs(warm.free_energy - cold.free_energy) < 1e-9);
    CHECK(warm.iterations <= cold.iterations);
}
