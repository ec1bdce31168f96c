#include "tw/hte.hpp"

#include <cmath>

#include <fmt/format.h>

namespace tw {

HteResult hte_xxx(double T, double h, double J) {
    if (!(T > 0.0)) throw NumericsError("hte_xxx: T must be > 0");
    const double th = std::tanh(h / (2.0 * T));
    HteResult r;
    r.terms[0] = -std::log(2.0 * std::cosh(h / (2.0 * T)));
    r.terms[1] = (J / T) * th * th;
    r.terms[2] = -1.5 * (J / T) * (J / T) * (1.0 - th * th * th * th);
    r.f_over_T = r.terms[0] + r.terms[1] + r.terms[2];
    return r;
}

HteResult hte_su3(double T, double h, double J) {
    if (!(T > 0.0)) throw NumericsError("hte_su3: T must be > 0");
    const double c = 2.0 * std::cosh(h / (2.0 * T)) + 1.0;
    HteResult r;
    r.terms[0] = -std::log(c);
    // The traceless convention H = 2J Σ (P − 1/3) shifts the raw permutation
    // coefficient 2 − 4/c down by the infinite-temperature mean 2/3.
    r.terms[1] = (J / T) * (4.0 / 3.0 - 4.0 / c);
    r.terms[2] = -12.0 * (J / T) * (J / T) * (c - 1.0) * (c - 1.0) / (c * c * c);
    r.f_over_T = r.terms[0] + r.terms[1] + r.terms[2];
    return r;
}

cplx hte_eps_xxx(cplx u, int order, double T, double h, double J) {
    const double beta = 1.0 / T;
    const double ch = std::cosh(h * beta / 2.0);
    const double a = 4.0 * ch * ch - 1.0;
    const cplx d9 = 1.0 / (u * u + 2.25);
    if (order == 1) return -(6.0 * J / a) * d9;
    if (order == 2) {
        const cplx p = 2.0 * J * d9;
        return -(9.0 * (a - 1.0 / a) * p * p + 4.0 * (a - 3.0) * (2.0 * J) * (2.0 * J) * d9) /
               (2.0 * (a * a + a));
    }
    throw NumericsError(fmt::format("hte_eps_xxx: unsupported order {}", order));
}

cplx hte_eps_su3(cplx u, int index, int order, double T, double h, double J) {
    const double beta = 1.0 / T;
    const double b = 2.0 * std::cosh(h * beta / 2.0) + 1.0;
    const cplx u2 = u * u;
    const cplx d1 = 1.0 / (u2 + 1.0);   // poles ±i
    const cplx d9 = 1.0 / (u2 + 2.25);  // poles ±3i/2
    const cplx d4 = 1.0 / (u2 + 4.0);   // poles ±2i
    if (order == 1) {
        switch (index) {
            case 1: return -(4.0 * J / b) * d1;
            case 2: return -(6.0 * J / (b * b)) * d9;
            case 3: return -(6.0 * J * (b + 1.0) / (b * b)) * d9;
            case 4: return -8.0 * J / (b * (b - 1.0)) * d4;
        }
    } else if (order == 2) {
        const double J2 = J * J;
        const double b2 = b * b, b3 = b * b * b, b4 = b2 * b2;
        switch (index) {
            case 1:
                return -4.0 * J2 * (b - 1.0) * ((b - 3.0) * u2 + 3.0 * (b - 1.0)) / b3 * d1 * d1;
            case 2:
                return -2.0 * J2 *
                       ((4.0 * b2 - 12.0 * b) * u2 + 18.0 * b2 - 27.0 * b - 9.0) / b4 * d9 * d9;
            case 3:
                return hte_eps_su3(u, 2, 2, T, h, J) * (b2 - b - 1.0) / (b - 1.0);
            case 4:
                return -4.0 * J2 *
                       ((3.0 * b3 - 11.0 * b2 + 5.0 * b + 3.0) * u2 +
                        20.0 * b3 - 52.0 * b2 + 12.0 * b + 12.0) /
                       (b3 * (b - 1.0) * (b - 1.0)) * d4 * d4;
        }
    }
    throw NumericsError(fmt::format("hte_eps_su3: unsupported index {} order {}", index, order));
}

}  // namespace tw
