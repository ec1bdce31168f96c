// Command-line front-end: free-energy sweeps, Bethe/eigenvalue root-pattern
// emission, and the functional-relation verification suite.  Links only the
// public C API.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "twthermo.h"

namespace {

using nlohmann::json;

std::string fmt12(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

// RFC-4180-style quoting: fields with commas, quotes, or newlines are quoted
// and embedded quotes doubled.
std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        out += c;
    }
    out += "\"";
    return out;
}

void write_csv_row(std::ostream& os, const std::vector<std::string>& fields) {
    for (size_t i = 0; i < fields.size(); ++i) {
        if (i) os << ",";
        os << csv_quote(fields[i]);
    }
    os << "\n";
}

struct OutputTarget {
    std::ofstream file;
    std::ostream* os = &std::cout;

    explicit OutputTarget(const std::string& path) {
        if (!path.empty()) {
            file.open(path);
            if (!file) throw CLI::ValidationError("--output", "cannot open " + path);
            os = &file;
        }
    }
};

tw_model parse_model(const std::string& m) {
    if (m == "xxx") return TW_MODEL_XXX;
    if (m == "su3") return TW_MODEL_SU3;
    throw CLI::ValidationError("--model", "must be xxx or su3");
}

std::vector<double> temperature_grid(double tmin, double tmax, int steps,
                                     const std::string& scale) {
    if (steps < 1) throw CLI::ValidationError("--t-steps", "must be >= 1");
    if (!(tmin > 0.0)) throw CLI::ValidationError("--t-min", "must be > 0");
    std::vector<double> ts;
    if (steps == 1) {
        ts.push_back(tmin);
        return ts;
    }
    if (!(tmax > tmin)) throw CLI::ValidationError("--t-max", "must exceed --t-min");
    for (int i = 0; i < steps; ++i) {
        const double w = static_cast<double>(i) / (steps - 1);
        if (scale == "log")
            ts.push_back(tmin * std::pow(tmax / tmin, w));
        else
            ts.push_back(tmin + (tmax - tmin) * w);
    }
    return ts;
}

struct SolverFlags {
    double delta = 0.0, Delta = 0.0, grid_extent = 0.0, tol = 0.0, damping = 0.0;
    int grid_points = 0, max_iter = 0;

    void add_to(CLI::App* cmd) {
        cmd->add_option("--delta", delta, "inner contour half-width (<=0: adaptive)");
        cmd->add_option("--Delta", Delta, "outer contour offset (<=0: default)");
        cmd->add_option("--grid-extent", grid_extent, "grid half-extent (<=0: 24)");
        cmd->add_option("--grid-points", grid_points, "odd grid size (<=0: model default)");
        cmd->add_option("--tol", tol, "fixed-point tolerance (<=0: 1e-10)");
        cmd->add_option("--max-iter", max_iter, "iteration cap (<=0: 500)");
        cmd->add_option("--damping", damping, "update damping in (0,1] (<=0: 0.5)");
    }

    tw_options to_options(double J, double h) const {
        tw_options o;
        tw_options_default(&o);
        o.J = J;
        o.h = h;
        o.delta = delta;
        o.Delta = Delta;
        o.grid_extent = grid_extent;
        o.grid_points = grid_points;
        o.tol = tol;
        o.max_iter = max_iter;
        o.damping = damping;
        return o;
    }
};

int run_free_energy(const std::string& model_s, double J, const std::vector<double>& hs,
                    double tmin, double tmax, int tsteps, const std::string& tscale,
                    const SolverFlags& sf, const std::string& output,
                    const std::string& format) {
    const tw_model model = parse_model(model_s);
    const std::vector<double> ts = temperature_grid(tmin, tmax, tsteps, tscale);
    OutputTarget out(output);

    bool any_failed = false;
    json jrows = json::array();
    if (format == "csv")
        write_csv_row(*out.os, {"T", "h", "f_nlie", "f_hte", "iterations", "residual"});

    for (double h : hs) {
        const tw_options opts = sf.to_options(J, h);
        std::vector<double> f(ts.size()), resid(ts.size());
        std::vector<int> iters(ts.size()), status(ts.size());
        const tw_status st = tw_free_energy_sweep(model, ts.data(), static_cast<int>(ts.size()),
                                                  &opts, f.data(), iters.data(), resid.data(),
                                                  status.data());
        if (st == TW_ERR_INVALID) {
            std::cerr << "error: " << tw_error_message() << "\n";
            return 2;
        }
        for (size_t i = 0; i < ts.size(); ++i) {
            double fh = 0.0;
            tw_hte_free_energy(model, ts[i], J, h, &fh);
            const bool ok = status[i] == 0;
            any_failed = any_failed || !ok;
            if (format == "csv") {
                write_csv_row(*out.os,
                              {fmt12(ts[i]), fmt12(h), ok ? fmt12(f[i]) : "FAILED", fmt12(fh),
                               ok ? std::to_string(iters[i]) : "", ok ? fmt12(resid[i]) : ""});
            } else {
                json row = {{"T", ts[i]},          {"h", h},
                            {"f_hte", fh},         {"status", ok ? "ok" : "failed"},
                            {"iterations", iters[i]}};
                if (ok) {
                    row["f_nlie"] = f[i];
                    row["residual"] = resid[i];
                }
                jrows.push_back(row);
            }
        }
    }
    if (format == "json") {
        json doc = {{"command", "free-energy"}, {"model", model_s}, {"J", J},
                    {"rows", jrows}};
        *out.os << doc.dump(2) << "\n";
    }
    if (any_failed) {
        std::cerr << "error: one or more sweep points failed: " << tw_error_message() << "\n";
        return 1;
    }
    return 0;
}

const char* kind_name(int kind) {
    switch (kind) {
        case 0: return "bethe";
        case 1: return "z";
        case 2: return "w";
        default: return "?";
    }
}

int run_roots(const std::string& model_s, int N, double T, double J, const std::string& route,
              const std::string& output, const std::string& format) {
    const tw_model model = parse_model(model_s);
    int route_id = 0;
    if (route == "operator")
        route_id = 0;
    else if (route == "bae")
        route_id = 1;
    else
        throw CLI::ValidationError("--route", "must be operator or bae");

    tw_roots* roots = nullptr;
    const tw_status st = tw_compute_roots(model, N, T, J, route_id, &roots);
    if (st != TW_OK) {
        std::cerr << "error: " << tw_error_message() << "\n";
        return st == TW_ERR_INVALID ? 2 : 1;
    }
    OutputTarget out(output);
    const int count = tw_roots_count(roots);
    if (format == "csv") {
        write_csv_row(*out.os, {"kind", "level", "re", "im"});
        for (int i = 0; i < count; ++i) {
            int kind, level;
            double re, im;
            tw_roots_get(roots, i, &kind, &level, &re, &im);
            write_csv_row(*out.os,
                          {kind_name(kind), std::to_string(level), fmt12(re), fmt12(im)});
        }
    } else {
        json jrows = json::array();
        for (int i = 0; i < count; ++i) {
            int kind, level;
            double re, im;
            tw_roots_get(roots, i, &kind, &level, &re, &im);
            jrows.push_back(
                {{"kind", kind_name(kind)}, {"level", level}, {"re", re}, {"im", im}});
        }
        json doc = {{"command", "roots"}, {"model", model_s}, {"N", N},
                    {"T", T},             {"J", J},           {"route", route},
                    {"rows", jrows}};
        *out.os << doc.dump(2) << "\n";
    }
    tw_roots_free(roots);
    return 0;
}

int run_verify(const std::string& model_s, const std::vector<int>& ns, int samples,
               unsigned seed, double corrupt, const std::string& output) {
    const tw_model model = parse_model(model_s);
    OutputTarget out(output);
    bool all_pass = true;
    write_csv_row(*out.os, {"model", "N", "samples", "max_residual", "threshold", "result"});
    for (int N : ns) {
        const double threshold = model == TW_MODEL_XXX ? 1e-9 : 1e-8;
        double resid = 0.0;
        const tw_status st = tw_verify(model, N, samples, seed, corrupt, &resid);
        if (st != TW_OK) {
            std::cerr << "error: " << tw_error_message() << "\n";
            return st == TW_ERR_INVALID ? 2 : 1;
        }
        const bool pass = resid < threshold;
        all_pass = all_pass && pass;
        write_csv_row(*out.os, {model_s, std::to_string(N), std::to_string(samples),
                                fmt12(resid), fmt12(threshold), pass ? "PASS" : "FAIL"});
    }
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Thermodynamics of integrable isotropic chains (XXX and SU(3))"};
    app.require_subcommand(1);
    // free the short -h for the magnetic-field flag
    app.set_help_flag("--help", "print help");

    // shared flags
    std::string model = "xxx", tscale = "linear", output, format = "csv", route = "bae";
    double J = 1.0, tmin = 1.0, tmax = 1.0;
    std::vector<double> hs{0.0};
    int tsteps = 1, trotter_n = 4, samples = 5;
    unsigned seed = 1;
    double corrupt = 0.0;
    SolverFlags sf;

    auto add_common = [&](CLI::App* cmd) {
        cmd->set_help_flag("--help", "print help");
        cmd->add_option("--model", model, "model: xxx or su3")->capture_default_str();
        cmd->add_option("--J", J, "exchange coupling")->capture_default_str();
        cmd->add_option("--output", output, "output file (default stdout)");
        cmd->add_option("--format", format, "output format: csv or json")
            ->check(CLI::IsMember({"csv", "json"}))
            ->capture_default_str();
        cmd->set_config("--config")->envname("TW_THERMO_CONFIG");
    };

    CLI::App* fe = app.add_subcommand("free-energy", "free-energy sweep over T (and h values)");
    add_common(fe);
    fe->add_option("--h", hs, "magnetic field values")->capture_default_str();
    fe->add_option("--t-min", tmin, "lowest temperature")->capture_default_str();
    fe->add_option("--t-max", tmax, "highest temperature")->capture_default_str();
    fe->add_option("--t-steps", tsteps, "number of temperatures")->capture_default_str();
    fe->add_option("--t-scale", tscale, "grid scale: linear or log")
        ->check(CLI::IsMember({"linear", "log"}))
        ->capture_default_str();
    sf.add_to(fe);

    CLI::App* rt = app.add_subcommand("roots", "emit QTM root patterns at h = 0");
    add_common(rt);
    rt->add_option("--trotter-n", trotter_n, "Trotter number N")->capture_default_str();
    rt->add_option("--t-min", tmin, "temperature")->capture_default_str();
    rt->add_option("--route", route, "root route: operator or bae")->capture_default_str();

    CLI::App* vf = app.add_subcommand("verify", "functional-relation residual suite");
    add_common(vf);
    std::vector<int> ns{2, 4};
    vf->add_option("--trotter-n", ns, "Trotter numbers to test")->capture_default_str();
    vf->add_option("--samples", samples, "random (u,T,h) tuples per N")->capture_default_str();
    vf->add_option("--seed", seed, "random seed")->capture_default_str();
    vf->add_option("--corrupt", corrupt,
                   "negative control: relative perturbation of the fused operator");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (fe->parsed())
            return run_free_energy(model, J, hs, tmin, tmax, tsteps, tscale, sf, output, format);
        if (rt->parsed()) return run_roots(model, trotter_n, tmin, J, route, output, format);
        if (vf->parsed()) return run_verify(model, ns, samples, seed, corrupt, output);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
