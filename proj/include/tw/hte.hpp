// Closed-form high-temperature expansions of the free energy (through order
// β²) and of the auxiliary dressing functions (orders β⁰, β¹).  These are
// independent analytic oracles for the NLIE solvers.
#pragma once

#include "tw/grid.hpp"

namespace tw {

struct HteResult {
    double f_over_T = 0.0;
    double terms[3] = {0.0, 0.0, 0.0};  // order β⁰, β¹, β² contributions
};

// Heisenberg XXX chain, H = J Σ σ·σ + (h/2) Σ σ^z:
//   f/T = −ln(2 cosh(h/2T)) + (J/T) tanh²(h/2T) − (3J²/2T²)(1 − tanh⁴(h/2T))
HteResult hte_xxx(double T, double h, double J);

// SU(3)-invariant chain in the traceless convention
// H = 2J Σ (P − 1/3) + (h/2) Σ S^z, with c = 2 cosh(h/2T) + 1:
//   f/T = −ln c + (J/T)(4/3 − 4/c) − 12 (J²/T²)(c−1)²/c³
HteResult hte_su3(double T, double h, double J);

// Small-β expansion of the XXX dressing function ε̄(u) = ε̄₁ + β·ε̄₂ + …
// order 1:  ε̄₁(u) = −(1/a)·6J/(u²+9/4),            a = 4cosh²(hβ/2) − 1
// order 2:  ε̄₂(u) = −(1/(2(a²+a)))·[9(a−1/a)(2J/(u²+9/4))² + 4(a−3)(2J)²/(u²+9/4)]
// (the returned value is the coefficient function, without the β power)
cplx hte_eps_xxx(cplx u, int order, double T, double h, double J);

// Small-β expansions of the four SU(3) dressing functions ε̄ᵢ = ε̄ᵢ₁ + β·ε̄ᵢ₂ + …,
// i ∈ {1..4}, order ∈ {1, 2}; b = 2 cosh(hβ/2) + 1.  First order:
//   ε̄₁₁ = −(4J/b)/(u²+1)              ε̄₂₁ = −(6J/b²)/(u²+9/4)
//   ε̄₃₁ = −6J(b+1)/b² /(u²+9/4)       ε̄₄₁ = −8J/(b(b−1)(u²+4))
// Second order (derived by residue calculus from the order-β² system):
//   ε̄₁₂ = −4J²(b−1)(bu²+3b−3u²−3)/(b³(u²+1)²)
//   ε̄₂₂ = −32J²(4b²u²+18b²−12bu²−27b−9)/(b⁴(4u²+9)²)
//   ε̄₃₂ = ε̄₂₂·(b²−b−1)/(b−1)
//   ε̄₄₂ = −4J²(3b³u²+20b³−11b²u²−52b²+5bu²+12b+3u²+12)/(b³(b−1)²(u²+4)²)
cplx hte_eps_su3(cplx u, int index, int order, double T, double h, double J);

}  // namespace tw
