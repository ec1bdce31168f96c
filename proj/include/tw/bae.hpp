// Bethe-ansatz solvers and T-Q evaluations for the quantum transfer matrices.
//
// XXX: the dominant QTM state at h = 0 has M = N/2 real Bethe roots fixed by
// a real counting-function system; the normalized eigenvalue at u = 0 gives a
// Trotter-exact free energy, and Newton refinement of the eigenvalue
// polynomial produces the z-root pattern.
//
// SU(3): nested two-level roots.  At small N the twisted Bethe equations are
// solved directly with the conjugation ansatz lambda^(2) = conj(lambda^(1));
// at larger N the plain Newton collapses onto spurious multiple-root
// configurations, so the roots are instead obtained by matching the T-Q form
// to exact dominant eigenvalues Lambda_1(u_k) computed matrix-free.
#pragma once

#include <utility>
#include <vector>

#include "tw/params.hpp"
#include "tw/qtm.hpp"

namespace tw {

// ---------------------------------------------------------------------------
// XXX chain.

// Dominant-state Bethe roots at h = 0 (all real) for the QTM with Trotter
// number N = 2M, from the counting-function system
//   (M/pi)(atan(l/tau) + atan(l/(1-tau))) - (1/pi) sum_k atan(l - l_k) = I_j
// with I_j = j - (M+1)/2.  Odd M places one root exactly at the origin (for
// M = 1 the system closes and the single root is lambda = 0).
std::vector<double> xxx_bae_solve_h0(int M, double beta, double J);

// Residuals of the polynomial Bethe equations a(l_j) Q(l_j - eta) +
// d(l_j) Q(l_j + eta) = 0 (self-factors included); used for h-continuation
// and verification at small M.
std::vector<cplx> xxx_bae_residual(const std::vector<cplx>& lam, const TrotterParams& tp,
                                   const ModelParams& p);

// T-Q eigenvalue Lambda(u) = (a(u) Q(u-eta) + d(u) Q(u+eta)) / Q(u).
cplx xxx_tq_lambda(cplx u, const std::vector<cplx>& lam, const TrotterParams& tp,
                   const ModelParams& p);

// Trotter-exact free energy f = J - T ln LambdaBar(0) at h = 0, with
// LambdaBar(0) = Lambda(0)/(1-tau)^N evaluated in log space (the direct
// product overflows beyond M ~ 100).
double xxx_f_bae(int M, double T, double J);

// Zeros of Lambda(u) (kind 0) or of the W(u) eigenvalue obtained from the
// scalar t-W relation (kind 1), by Newton iteration seeded at lam_j +- i
// (z-roots) or lam_j +- 3i/2 (w-roots).
std::vector<cplx> xxx_roots_from_bae(const std::vector<double>& lam, const TrotterParams& tp,
                                     const ModelParams& p, int kind);

// ---------------------------------------------------------------------------
// SU(3) chain.

// Residuals of the twisted nested Bethe equations in polynomial form;
// x = [lambda^(1) (M entries), lambda^(2) (M entries)].
std::vector<cplx> su3_bae_residual(const std::vector<cplx>& x, const TrotterParams& tp,
                                   const ModelParams& p);

// Dominant-state roots at h = 0 with the conjugation ansatz
// lambda^(2) = conj(lambda^(1)) (real-parametrized Newton); returns the best
// converged solution (largest |Lambda_1(0)|) over the given seeds.
std::vector<cplx> su3_bae_solve_h0(const TrotterParams& tp, const ModelParams& p,
                                   const std::vector<std::vector<cplx>>& seeds);

// Twisted T-Q eigenvalues of t1 (level 1) and t2 (level 2).
cplx su3_tq_lambda1(cplx u, const std::vector<cplx>& l1, const std::vector<cplx>& l2,
                    const TrotterParams& tp, const ModelParams& p);
cplx su3_tq_lambda2(cplx u, const std::vector<cplx>& l1, const std::vector<cplx>& l2,
                    const TrotterParams& tp, const ModelParams& p);

// Matrix-free application of the SU(3) QTM t1(u) to a vector of length 3^N,
// and the dominant eigenpair by power iteration (used for N up to ~14 where
// dense storage of the operator is impossible).
Eigen::VectorXcd su3_qtm_apply(const Eigen::VectorXcd& v, cplx u, const TrotterParams& tp,
                               const ModelParams& p);
std::pair<cplx, Eigen::VectorXcd> su3_qtm_dominant(const TrotterParams& tp, const ModelParams& p,
                                                   cplx u = 0.0);

// Dominant-state level-1 roots at larger N (h = 0) by over-determined
// log-space Gauss-Newton matching of the T-Q form to exact eigenvalues on
// sample rings, seeded by growing smaller-N solutions and beta-continuation.
// Returns lambda^(1); lambda^(2) = conj(lambda^(1)).
std::vector<cplx> su3_roots_large_n(int N, double beta, double J);

}  // namespace tw
