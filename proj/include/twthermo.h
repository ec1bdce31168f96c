/* C API for the integrable-chain thermodynamics engine.
 *
 * Models:
 *   TW_MODEL_XXX  spin-1/2 isotropic Heisenberg chain,
 *                 H = J sum 2(P - 1/2) + h/2 sum sigma^z   (traceless bonds)
 *   TW_MODEL_SU3  SU(3)-invariant chain,
 *                 H = 2J sum (P - 1/3) + h/2 sum S^z       (traceless bonds)
 *
 * Free energies are per site.  All functions return TW_OK on success; on
 * failure tw_error_message() describes the most recent error in the calling
 * thread.
 */
#ifndef TWTHERMO_H
#define TWTHERMO_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
    TW_OK = 0,
    TW_ERR_INVALID = 1, /* bad arguments / unsupported parameter range */
    TW_ERR_NUMERICS = 2 /* solver failed to converge or lost accuracy */
} tw_status;

typedef enum { TW_MODEL_XXX = 0, TW_MODEL_SU3 = 1 } tw_model;

/* Solver options.  Non-positive entries select the documented defaults
 * (adaptive contour widths, extent 24, model-dependent grid size, tolerance
 * 1e-10, 500 iterations, damping 0.5). */
typedef struct {
    double J;
    double h;
    double delta;       /* inner contour half-width (XXX: delta; SU(3): d1) */
    double Delta;       /* outer line offset */
    double grid_extent; /* half-extent of the real-axis grid */
    int grid_points;    /* odd number of grid nodes */
    double tol;
    int max_iter;
    double damping;
} tw_options;

void tw_options_default(tw_options* opts);

/* Free energy per site at temperature T from the nonlinear integral
 * equations. */
tw_status tw_free_energy(tw_model model, double T, const tw_options* opts, double* f_out);

/* Batch of temperatures; internally solved in descending-T order with warm
 * starts, results returned in input order.  iters_out, resid_out and
 * status_out (0 = converged, nonzero = failed; f undefined there) may each be
 * NULL.  Returns TW_ERR_NUMERICS if any point failed; the remaining points
 * are still computed (best effort). */
tw_status tw_free_energy_sweep(tw_model model, const double* temps, int count,
                               const tw_options* opts, double* f_out, int* iters_out,
                               double* resid_out, int* status_out);

/* Second-order high-temperature expansion (closed form). */
tw_status tw_hte_free_energy(tw_model model, double T, double J, double h, double* f_out);

/* Exact diagonalization of the periodic chain of L sites. */
tw_status tw_ed_free_energy(tw_model model, int L, double T, double J, double h, double* f_out);

/* Trotter-exact Bethe-ansatz free energy for the XXX chain at h = 0
 * (Trotter number N = 2M). */
tw_status tw_bae_free_energy_xxx(int M, double T, double J, double* f_out);

/* Root patterns of the quantum transfer matrix at h = 0.
 * Root kinds: 0 = Bethe root, 1 = z-root (eigenvalue zero), 2 = w-root.
 * XXX  route 0: z/w-roots from the dense operator eigenbasis (N <= 10);
 *      route 1: Bethe roots (M = N/2) plus z/w-roots from the T-Q form
 *               (validated up to N ~ 400).
 * SU3  (route ignored): Bethe roots of both nesting levels, by direct solve
 *      at N = 4 and T-Q eigenvalue matching at larger N (N <= 12). */
typedef struct tw_roots tw_roots;
tw_status tw_compute_roots(tw_model model, int N, double T, double J, int route,
                           tw_roots** roots_out);
int tw_roots_count(const tw_roots* roots);
tw_status tw_roots_get(const tw_roots* roots, int index, int* kind, int* level, double* re,
                       double* im);
void tw_roots_free(tw_roots* roots);

/* Functional-relation self check: maximum relative residual of the fusion
 * identity over `samples` random (u, T, h) tuples at Trotter number N.
 * A positive `perturbation` scales a deliberate corruption of the W operator
 * and must make the residual blow up (negative control for the test
 * harness). */
tw_status tw_verify(tw_model model, int N, int samples, unsigned seed, double perturbation,
                    double* max_residual_out);

/* Message for the most recent error in this thread. */
const char* tw_error_message(void);

#ifdef __cplusplus
}
#endif

#endif /* TWTHERMO_H */
