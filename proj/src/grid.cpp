#include "tw/grid.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>
#include <unsupported/Eigen/FFT>

namespace tw {

double LineFunction::max_abs() const {
    double m = 0.0;
    for (const cplx& z : values) m = std::max(m, std::abs(z));
    return m;
}

bool LineFunction::decays(double bound) const {
    if (values.empty()) return true;
    const double m = max_abs();
    if (m == 0.0) return true;
    return std::abs(values.front()) <= bound * m && std::abs(values.back()) <= bound * m;
}

void LineFunction::require_decay(double bound, const char* what) const {
    if (!decays(bound)) {
        throw NumericsError(fmt::format(
            "{}: extent too small (endpoint magnitude {:.3e}/{:.3e} vs max {:.3e})", what,
            std::abs(values.front()), std::abs(values.back()), max_abs()));
    }
}

cplx trapezoid_integrate(const LineFunction& f) {
    const int n = f.grid.count;
    cplx s = 0.0;
    for (int k = 1; k + 1 < n; ++k) s += f.values[k];
    s += 0.5 * (f.values.front() + f.values.back());
    return s * f.grid.spacing();
}

LineFunction cauchy_transform(const LineFunction& f, cplx kernel_offset, const LineGrid& target) {
    const int n = f.grid.count;
    const double dx = f.grid.spacing();

    // Kernel pole sits at v = u − kernel_offset with u, v both real
    // parameters; reject configurations where it collides with the grid.
    if (std::abs(kernel_offset.imag()) < 0.5 * dx) {
        for (int j = 0; j < target.count; ++j) {
            const double pole = target.real_at(j) - kernel_offset.real();
            if (std::abs(pole) > f.grid.half_extent + 0.5 * dx) continue;
            const double frac = (pole + f.grid.half_extent) / dx;
            if (std::abs(frac - std::round(frac)) * dx < 0.5 * dx) {
                throw NumericsError(fmt::format(
                    "cauchy_transform: kernel pole at v={:.6g} collides with source node "
                    "(target index {})",
                    pole, j));
            }
        }
    }

    const cplx inv_2pii = cplx(0.0, -1.0 / (2.0 * M_PI));  // 1/(2πi)
    LineFunction g(target);

    // When source and target share the same uniform real grid the sum is a
    // discrete convolution: u_j − v_k = (j − k)·dx.  Evaluate it with an FFT;
    // the solvers call this dozens of times per iteration.
    if (target.count == n && target.half_extent == f.grid.half_extent) {
        size_t len = 1;
        while (len < static_cast<size_t>(3 * n - 2)) len <<= 1;
        std::vector<cplx> a(len, cplx(0.0)), b(len, cplx(0.0));
        for (int k = 0; k < n; ++k) {
            const double w = (k == 0 || k == n - 1) ? 0.5 : 1.0;
            a[k] = w * f.values[k];
        }
        // kernel sampled at separations m·dx, m = −(n−1) … n−1, stored with
        // offset n−1 so the linear convolution lands at indices n−1 … 2n−2
        for (int m = -(n - 1); m <= n - 1; ++m)
            b[m + n - 1] = 1.0 / (m * dx - kernel_offset);
        Eigen::FFT<double> fft;
        std::vector<cplx> fa(len), fb(len);
        fft.fwd(fa, a);
        fft.fwd(fb, b);
        for (size_t i = 0; i < len; ++i) fa[i] *= fb[i];
        std::vector<cplx> conv(len);
        fft.inv(conv, fa);
        for (int j = 0; j < n; ++j) g.values[j] = conv[j + n - 1] * dx * inv_2pii;
        return g;
    }

    for (int j = 0; j < target.count; ++j) {
        const double u = target.real_at(j);
        cplx s = 0.0;
        for (int k = 0; k < n; ++k) {
            const cplx term = f.values[k] / (u - f.grid.real_at(k) - kernel_offset);
            s += (k == 0 || k == n - 1) ? 0.5 * term : term;
        }
        g.values[j] = s * dx * inv_2pii;
    }
    return g;
}

cplx cosh_convolve(const LineFunction& f, double u) {
    const int n = f.grid.count;
    const double dx = f.grid.spacing();
    cplx s = 0.0;
    for (int k = 0; k < n; ++k) {
        const double arg = M_PI * (u - f.grid.real_at(k));
        // 1/(2 cosh x) = e^{-|x|} / (1 + e^{-2|x|}) avoids overflow far out.
        const double e = std::exp(-std::abs(arg));
        const cplx term = f.values[k] * (e / (1.0 + e * e));
        s += (k == 0 || k == n - 1) ? 0.5 * term : term;
    }
    return s * dx;
}

}  // namespace tw
