// Exact small-N quantum-transfer-matrix oracle for both models.
//
// The quantum transfer matrix (QTM) arises from a Trotter-Suzuki splitting of
// e^{-beta H}: N auxiliary sites carry alternating R-matrix factors with
// spectral-parameter staggering +-i*tau, tau = 2 J beta / N, and a horizontal
// field twist.  Its largest eigenvalue at spectral point u = 0 gives the free
// energy per site in the N -> infinity limit.
//
// This module builds the QTMs, their fused partners (the W operator for the
// XXX chain; t2, W1, W2 for the SU(3) chain) as dense matrices at desk scale,
// verifies the t-W operator identities, extracts eigenvalue-polynomial roots,
// and provides exact-diagonalization free energies of the corresponding spin
// Hamiltonians for cross-validation.
#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "tw/params.hpp"

namespace tw {

using Op = Eigen::MatrixXcd;

struct TrotterParams {
    int N = 2;  // even Trotter number; dense dimension is 2^N or 3^N

    explicit TrotterParams(int n) : N(n) {
        if (N < 2 || N % 2 != 0) throw NumericsError("TrotterParams: N must be even and >= 2");
    }
    double tau(const ModelParams& p) const { return 2.0 * p.J * p.beta / N; }
};

// ---------------------------------------------------------------------------
// R-matrices (fundamental representations).

// Rational six-vertex R-matrix on C^2 (x) C^2: R(u) = u + eta*P.
Op r_matrix_xxx(cplx u);

// SU(3)-invariant R-matrix on C^3 (x) C^3: R(u) = u + eta*P.
Op r_matrix_su3(cplx u);

// ---------------------------------------------------------------------------
// XXX chain.

// QTM t(u): trace over the 2-dim auxiliary space of the staggered product of
// R_{0k} with twist diag(e^{h beta/2}, e^{-h beta/2}); even sites carry
// argument u - i*tau, odd sites u + i*tau - i.
Op qtm_build_xxx(cplx u, const TrotterParams& tp, const ModelParams& p);

// Scalar dispersion factors of the t-W relation:
//   a(u) = e^{+h beta/2} (u - i tau + i)^{N/2} (u + i tau)^{N/2}
//   d(u) = e^{-h beta/2} (u - i tau)^{N/2} (u + i tau - i)^{N/2}
cplx xxx_a(cplx u, const TrotterParams& tp, const ModelParams& p);
cplx xxx_d(cplx u, const TrotterParams& tp, const ModelParams& p);

// Fused transfer matrix W(u) built from the spin-1 (x) spin-1/2 fused
// R-matrix in the symmetric-subspace basis, traced with twist
// diag(e^{h beta}, 1, e^{-h beta}).
Op fused_w_build_xxx(cplx u, const TrotterParams& tp, const ModelParams& p);

// Relative sup-norm residual of the t-W identity
//   t(u) t(u-eta) = a(u) d(u-eta) Id + e^{h beta/2} d(u) W(u).
// w_perturb rescales W by (1 + w_perturb) to provide a negative control.
double verify_tw_xxx(cplx u, const TrotterParams& tp, const ModelParams& p,
                     double w_perturb = 0.0);

// Relative residual of the antisymmetric-channel projection that seeds the
// fusion hierarchy: with psi the auxiliary singlet over the doubled auxiliary
// space, <psi| T(u) (x) T(u-eta) |psi> = a(u) d(u-eta) Id on the quantum
// space (the quantum determinant).  Dense check, N <= 6.
double verify_antisym_channel_xxx(cplx u, const TrotterParams& tp, const ModelParams& p);

// ---------------------------------------------------------------------------
// SU(3) chain.

// QTM t1(u): even sites carry untransposed R_{0k}(u - i tau), odd sites the
// site-transposed R^{t_k}(u + i tau); twist diag(e^{h beta/2}, 1, e^{-h beta/2}).
Op qtm_build_su3(cplx u, const TrotterParams& tp, const ModelParams& p);

// Fused partners: t2 from the antisymmetric (3-bar) channel of two
// fundamental rows, W1 from the symmetric channel, W2 from the symmetric
// channel of two t2 rows.  Per-site scalar normalizations are fixed by
// divisibility so the printed prefactor polynomials close the identities.
Op su3_t2_build(cplx u, const TrotterParams& tp, const ModelParams& p);
Op su3_w1_build(cplx u, const TrotterParams& tp, const ModelParams& p);
Op su3_w2_build(cplx u, const TrotterParams& tp, const ModelParams& p);

// Relative residuals of the two SU(3) t-W identities (with M = N/2):
//   t1(u) t1(u-eta) = [(u+i tau)(u-i tau-i)]^M t2(u-eta/2)
//                   + [(u+i tau-i)(u-i tau)]^M W1(u)
//   t2(u) t2(u-eta) = [(u+i tau-5i/2)(u-i tau+3i/2)]^M t1(u-eta/2)
//                   + [(u+i tau-3i/2)(u-i tau+i/2)]^M W2(u)
// perturb rescales W1/W2 as a negative control.
std::pair<double, double> verify_tw_su3(cplx u, const TrotterParams& tp, const ModelParams& p,
                                        double perturb = 0.0);

// ---------------------------------------------------------------------------
// Spectra and roots.

// Eigenpair with maximal |eigenvalue| (dense eigendecomposition).
std::pair<cplx, Eigen::VectorXcd> eigen_top(const Op& t0);

// Zeros of the degree-N eigenvalue polynomial Lambda(u) along the top
// eigenvector: Lambda is sampled at N+1 points (eigenvector tracked by
// overlap continuity), interpolated, and its companion-matrix roots returned.
// kind: 0 = z-roots (zeros of Lambda), 1 = w-roots (zeros of the W eigenvalue
// obtained from the scalar t-W relation).
std::vector<cplx> eigenvalue_roots_xxx(const TrotterParams& tp, const ModelParams& p, int kind);

// Roots of a monic-normalized polynomial given coefficients c[0..deg]
// (c[k] multiplies u^k) via the companion matrix.
std::vector<cplx> polynomial_roots(const std::vector<cplx>& coeffs);

// ---------------------------------------------------------------------------
// Exact diagonalization of the physical chains (periodic boundaries).
//
// XXX:   H = J sum_k sigma_k . sigma_{k+1} + (h/2) sum_k sigma_k^z
// SU(3): H = 2J sum_k (P_{k,k+1} - 1/3) + (h/2) sum_k S_k^z,
//        S^z = diag(1, 0, -1); the traceless shift -2J/3 per bond fixes the
//        infinite-temperature mean energy to zero, matching the engine's
//        free-energy convention.
// Both conserve the on-site weight, so the trace is accumulated per weight
// sector (dense diagonalization of each block).
double ed_free_energy_xxx(int L, double T, double h, double J);
double ed_free_energy_su3(int L, double T, double h, double J);

}  // namespace tw
