#include "twthermo.h"

#include <algorithm>
#include <cstring>
#include <memory>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "tw/bae.hpp"
#include "tw/hte.hpp"
#include "tw/nlie_su3.hpp"
#include "tw/nlie_xxx.hpp"
#include "tw/qtm.hpp"

namespace {

thread_local std::string g_error;

template <typename Fn>
tw_status guarded(Fn&& fn) {
    try {
        fn();
        return TW_OK;
    } catch (const std::invalid_argument& e) {
        g_error = e.what();
        return TW_ERR_INVALID;
    } catch (const std::exception& e) {
        g_error = e.what();
        return TW_ERR_NUMERICS;
    }
}

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

tw::XxxNlieOptions xxx_opts_from(const tw_options& o) {
    tw::XxxNlieOptions r;
    if (o.delta > 0.0) r.delta = o.delta;
    if (o.Delta > 0.0) r.Delta = o.Delta;
    if (o.grid_extent > 0.0) r.half_extent = o.grid_extent;
    if (o.grid_points > 0) r.grid_points = o.grid_points;
    if (o.tol > 0.0) r.tol = o.tol;
    if (o.max_iter > 0) r.max_iter = o.max_iter;
    if (o.damping > 0.0) r.damping = o.damping;
    return r;
}

tw::Su3NlieOptions su3_opts_from(const tw_options& o) {
    tw::Su3NlieOptions r;
    if (o.delta > 0.0) {
        r.d1 = o.delta;
        r.d2 = 2.0 * o.delta;
    }
    if (o.Delta > 0.0) r.Delta = o.Delta;
    if (o.grid_extent > 0.0) r.half_extent = o.grid_extent;
    if (o.grid_points > 0) r.grid_points = o.grid_points;
    if (o.tol > 0.0) r.tol = o.tol;
    if (o.max_iter > 0) r.max_iter = o.max_iter;
    if (o.damping > 0.0) r.damping = o.damping;
    return r;
}

tw_options defaults_or(const tw_options* opts) {
    tw_options o;
    if (opts != nullptr)
        o = *opts;
    else
        tw_options_default(&o);
    return o;
}

}  // namespace

struct tw_roots {
    struct Entry {
        int kind;
        int level;
        double re;
        double im;
    };
    std::vector<Entry> entries;
};

extern "C" {

void tw_options_default(tw_options* opts) {
    if (opts == nullptr) return;
    opts->J = 1.0;
    opts->h = 0.0;
    opts->delta = 0.0;
    opts->Delta = 0.0;
    opts->grid_extent = 0.0;
    opts->grid_points = 0;
    opts->tol = 0.0;
    opts->max_iter = 0;
    opts->damping = 0.0;
}

tw_status tw_free_energy(tw_model model, double T, const tw_options* opts, double* f_out) {
    return guarded([&] {
        require(f_out != nullptr, "tw_free_energy: f_out is null");
        require(T > 0.0, "tw_free_energy: T must be > 0");
        const tw_options o = defaults_or(opts);
        tw::ModelParams p{o.J, o.h, 1.0 / T};
        if (model == TW_MODEL_XXX)
            *f_out = tw::xxx_nlie_solve(p, xxx_opts_from(o)).free_energy;
        else if (model == TW_MODEL_SU3)
            *f_out = tw::su3_nlie_solve(p, su3_opts_from(o)).free_energy;
        else
            require(false, "tw_free_energy: unknown model");
    });
}

tw_status tw_free_energy_sweep(tw_model model, const double* temps, int count,
                               const tw_options* opts, double* f_out, int* iters_out,
                               double* resid_out, int* status_out) {
    bool any_failed = false;
    const tw_status st = guarded([&] {
        require(temps != nullptr && f_out != nullptr, "tw_free_energy_sweep: null buffer");
        require(count > 0, "tw_free_energy_sweep: count must be > 0");
        for (int i = 0; i < count; ++i)
            require(temps[i] > 0.0, "tw_free_energy_sweep: temperatures must be > 0");
        require(model == TW_MODEL_XXX || model == TW_MODEL_SU3,
                "tw_free_energy_sweep: unknown model");
        const tw_options o = defaults_or(opts);
        std::vector<int> order(count);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(),
                  [&](int a, int b) { return temps[a] > temps[b]; });
        // one warm-start chain per model, descending in T; a failed point
        // breaks the chain but the sweep continues
        tw::XxxNlieSolution xprev;
        tw::Su3NlieSolution sprev;
        bool have_prev = false;
        for (int i : order) {
            tw::ModelParams p{o.J, o.h, 1.0 / temps[i]};
            try {
                int iters;
                double resid;
                if (model == TW_MODEL_XXX) {
                    xprev = tw::xxx_nlie_solve(p, xxx_opts_from(o), have_prev ? &xprev : nullptr);
                    f_out[i] = xprev.free_energy;
                    iters = xprev.iterations;
                    resid = xprev.final_residual;
                } else {
                    sprev = tw::su3_nlie_solve(p, su3_opts_from(o), have_prev ? &sprev : nullptr);
                    f_out[i] = sprev.free_energy;
                    iters = sprev.iterations;
                    resid = sprev.final_residual;
                }
                have_prev = true;
                if (iters_out) iters_out[i] = iters;
                if (resid_out) resid_out[i] = resid;
                if (status_out) status_out[i] = 0;
            } catch (const std::exception& e) {
                any_failed = true;
                have_prev = false;
                g_error = e.what();
                f_out[i] = 0.0;
                if (iters_out) iters_out[i] = 0;
                if (resid_out) resid_out[i] = 0.0;
                if (status_out) status_out[i] = 1;
            }
        }
    });
    if (st != TW_OK) return st;
    return any_failed ? TW_ERR_NUMERICS : TW_OK;
}

tw_status tw_hte_free_energy(tw_model model, double T, double J, double h, double* f_out) {
    return guarded([&] {
        require(f_out != nullptr, "tw_hte_free_energy: f_out is null");
        require(T > 0.0, "tw_hte_free_energy: T must be > 0");
        if (model == TW_MODEL_XXX)
            *f_out = T * tw::hte_xxx(T, h, J).f_over_T;
        else if (model == TW_MODEL_SU3)
            *f_out = T * tw::hte_su3(T, h, J).f_over_T;
        else
            require(false, "tw_hte_free_energy: unknown model");
    });
}

tw_status tw_ed_free_energy(tw_model model, int L, double T, double J, double h, double* f_out) {
    return guarded([&] {
        require(f_out != nullptr, "tw_ed_free_energy: f_out is null");
        require(T > 0.0, "tw_ed_free_energy: T must be > 0");
        if (model == TW_MODEL_XXX)
            *f_out = tw::ed_free_energy_xxx(L, T, h, J);
        else if (model == TW_MODEL_SU3)
            *f_out = tw::ed_free_energy_su3(L, T, h, J);
        else
            require(false, "tw_ed_free_energy: unknown model");
    });
}

tw_status tw_bae_free_energy_xxx(int M, double T, double J, double* f_out) {
    return guarded([&] {
        require(f_out != nullptr, "tw_bae_free_energy_xxx: f_out is null");
        require(T > 0.0, "tw_bae_free_energy_xxx: T must be > 0");
        *f_out = tw::xxx_f_bae(M, T, J);
    });
}

tw_status tw_compute_roots(tw_model model, int N, double T, double J, int route,
                           tw_roots** roots_out) {
    return guarded([&] {
        require(roots_out != nullptr, "tw_compute_roots: roots_out is null");
        require(T > 0.0, "tw_compute_roots: T must be > 0");
        require(N >= 2 && N % 2 == 0, "tw_compute_roots: N must be even and >= 2");
        auto out = std::make_unique<tw_roots>();
        const double beta = 1.0 / T;
        tw::ModelParams p{J, 0.0, beta};
        tw::TrotterParams tp(N);
        if (model == TW_MODEL_XXX) {
            if (route == 0) {
                for (auto z : tw::eigenvalue_roots_xxx(tp, p, 0))
                    out->entries.push_back({1, 1, z.real(), z.imag()});
                for (auto z : tw::eigenvalue_roots_xxx(tp, p, 1))
                    out->entries.push_back({2, 1, z.real(), z.imag()});
            } else if (route == 1) {
                const std::vector<double> lam = tw::xxx_bae_solve_h0(N / 2, beta, J);
                for (double l : lam) out->entries.push_back({0, 1, l, 0.0});
                for (auto z : tw::xxx_roots_from_bae(lam, tp, p, 0))
                    out->entries.push_back({1, 1, z.real(), z.imag()});
                for (auto z : tw::xxx_roots_from_bae(lam, tp, p, 1))
                    out->entries.push_back({2, 1, z.real(), z.imag()});
            } else {
                require(false, "tw_compute_roots: route must be 0 (operator) or 1 (bae)");
            }
        } else if (model == TW_MODEL_SU3) {
            for (auto z : tw::su3_roots_large_n(N, beta, J)) {
                out->entries.push_back({0, 1, z.real(), z.imag()});
                out->entries.push_back({0, 2, z.real(), -z.imag()});
            }
        } else {
            require(false, "tw_compute_roots: unknown model");
        }
        *roots_out = out.release();
    });
}

int tw_roots_count(const tw_roots* roots) {
    return roots == nullptr ? 0 : static_cast<int>(roots->entries.size());
}

tw_status tw_roots_get(const tw_roots* roots, int index, int* kind, int* level, double* re,
                       double* im) {
    return guarded([&] {
        require(roots != nullptr, "tw_roots_get: roots is null");
        require(index >= 0 && index < static_cast<int>(roots->entries.size()),
                "tw_roots_get: index out of range");
        const auto& e = roots->entries[index];
        if (kind) *kind = e.kind;
        if (level) *level = e.level;
        if (re) *re = e.re;
        if (im) *im = e.im;
    });
}

void tw_roots_free(tw_roots* roots) { delete roots; }

tw_status tw_verify(tw_model model, int N, int samples, unsigned seed, double perturbation,
                    double* max_residual_out) {
    return guarded([&] {
        require(max_residual_out != nullptr, "tw_verify: max_residual_out is null");
        require(samples > 0, "tw_verify: samples must be > 0");
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> u_re(-1.0, 1.0);
        std::uniform_real_distribution<double> u_T(0.2, 10.0);
        std::uniform_real_distribution<double> u_h(0.0, 2.0);
        tw::TrotterParams tp(N);
        double worst = 0.0;
        for (int s = 0; s < samples; ++s) {
            const tw::cplx u(u_re(rng), u_re(rng));
            tw::ModelParams p{1.0, u_h(rng), 1.0 / u_T(rng)};
            if (model == TW_MODEL_XXX) {
                worst = std::max(worst, tw::verify_tw_xxx(u, tp, p, perturbation));
            } else if (model == TW_MODEL_SU3) {
                const auto r = tw::verify_tw_su3(u, tp, p, perturbation);
                worst = std::max({worst, r.first, r.second});
            } else {
                require(false, "tw_verify: unknown model");
            }
        }
        *max_residual_out = worst;
    });
}

const char* tw_error_message(void) { return g_error.c_str(); }

}  // extern "C"
