// Line grids, trapezoid quadrature, Cauchy line transforms and the 1/cosh
// convolution kernel shared by both nonlinear-integral-equation solvers.
//
// All integrals in the solvers run along horizontal lines Im(u) = c in the
// complex plane.  A LineFunction stores samples f(v) = F(v + i c) on a
// uniform, symmetric grid of the *real* parameter v; the imaginary offset c
// is carried as a label so callers can keep track of which line a function
// lives on.
#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

namespace tw {

using cplx = std::complex<double>;

struct NumericsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Uniform symmetric grid v_k = -V + k*spacing (k = 0..n-1) on the line
// Im(u) = imag_offset.  n must be odd so v = 0 is a node.
struct LineGrid {
    double imag_offset = 0.0;
    double half_extent = 24.0;
    int count = 1537;

    LineGrid() = default;
    LineGrid(double c, double V, int n) : imag_offset(c), half_extent(V), count(n) {
        if (!(half_extent > 0.0)) throw NumericsError("LineGrid: half_extent must be > 0");
        if (count < 3 || count % 2 == 0) throw NumericsError("LineGrid: count must be odd and >= 3");
    }

    double spacing() const { return 2.0 * half_extent / (count - 1); }
    double real_at(int k) const { return -half_extent + k * spacing(); }
    cplx node(int k) const { return {real_at(k), imag_offset}; }
};

struct LineFunction {
    LineGrid grid;
    std::vector<cplx> values;

    LineFunction() = default;
    explicit LineFunction(const LineGrid& g) : grid(g), values(g.count, cplx(0.0)) {}
    LineFunction(const LineGrid& g, std::function<cplx(cplx)> f) : grid(g), values(g.count) {
        for (int k = 0; k < g.count; ++k) values[k] = f(g.node(k));
    }

    double max_abs() const;
    // Endpoint decay check: |f| at both ends below bound * max|f|.
    bool decays(double bound = 1e-12) const;
    void require_decay(double bound = 1e-12, const char* what = "LineFunction") const;
};

// Composite trapezoid rule over the real parametrization of f's line.
cplx trapezoid_integrate(const LineFunction& f);

// g(u) = (1/2πi) ∫ dv f(v) / (u − v − kernel_offset), u running over the
// real parametrization of `target`.  Throws if the kernel pole lands within
// half a spacing of a source node.
LineFunction cauchy_transform(const LineFunction& f, cplx kernel_offset, const LineGrid& target);

// ∫ dv f(v) / (2 cosh π(u − v)) for f sampled on the real line.
cplx cosh_convolve(const LineFunction& f, double u);

}  // namespace tw
