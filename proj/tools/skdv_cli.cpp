// Command-line front end. Uses only the C interface of libskdv.

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "skdv/skdv.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitFail = 2;
constexpr int kExitHalted = 4;

int report_error(skdv_status s) {
    std::fprintf(stderr, "error (%s): %s\n", skdv_status_name(s), skdv_last_error());
    return s == SKDV_E_HALTED ? kExitHalted : kExitUsage;
}

struct ConfigHandle {
    skdv_config* ptr = nullptr;
    ~ConfigHandle() { skdv_config_free(ptr); }
};

struct RunHandle {
    skdv_run* ptr = nullptr;
    ~RunHandle() { skdv_run_free(ptr); }
};

void print_warnings(const skdv_run* run) {
    size_t n = 0;
    skdv_run_warning_count(run, &n);
    for (size_t i = 0; i < n; ++i) {
        const char* text = nullptr;
        if (skdv_run_warning(run, i, &text) == SKDV_OK) std::fprintf(stderr, "warning: %s\n", text);
    }
}

void print_residuals(const skdv_run* run) {
    skdv_residuals r{};
    skdv_run_residuals(run, &r);
    size_t samples = 0;
    skdv_run_sample_count(run, &samples);
    std::printf("samples %zu\n", samples);
    std::printf("max residuals: mass %.3e  moment %.3e  energy %.3e  first-moment rate %.3e\n", r.r_mass,
                r.r_moment, r.r_energy, r.r_first_moment_rate);
    if (r.r_virial_max > 0.0) std::printf("virial residual: mid-run %.3e  max %.3e\n", r.r_virial_mid, r.r_virial_max);
}

int apply_overrides(skdv_config* cfg, const std::vector<std::string>& overrides) {
    for (const auto& o : overrides) {
        skdv_status s = skdv_config_override(cfg, o.c_str());
        if (s != SKDV_OK) return report_error(s);
    }
    return kExitOk;
}

int cmd_run(const std::string& path, const std::vector<std::string>& overrides, const std::string& outdir) {
    ConfigHandle cfg;
    skdv_status s = skdv_config_load(path.c_str(), &cfg.ptr);
    if (s != SKDV_OK) return report_error(s);
    if (int rc = apply_overrides(cfg.ptr, overrides)) return rc;
    RunHandle run;
    s = skdv_run_create(cfg.ptr, &run.ptr);
    if (s != SKDV_OK) return report_error(s);
    print_warnings(run.ptr);
    print_residuals(run.ptr);
    s = skdv_run_write(run.ptr, outdir.c_str());
    if (s != SKDV_OK) return report_error(s);
    std::printf("outputs written to %s\n", outdir.c_str());
    int halted = 0;
    double halt_time = 0.0;
    skdv_run_halted(run.ptr, &halted, &halt_time);
    if (halted) {
        std::printf("run halted at t = %.6g (non-finite values)\n", halt_time);
        return kExitHalted;
    }
    return kExitOk;
}

const char* verdict_text(skdv_verdict v) {
    switch (v) {
        case SKDV_VERDICT_PASS: return "pass";
        case SKDV_VERDICT_FAIL: return "fail";
        case SKDV_VERDICT_HYPOTHESES_NOT_MET: return "hypotheses not met";
        case SKDV_VERDICT_HALTED: return "halted";
        case SKDV_VERDICT_NONE: break;
    }
    return "none";
}

int cmd_scenario(const std::string& name, const std::vector<std::string>& overrides, const std::string& outdir) {
    ConfigHandle cfg;
    skdv_status s = skdv_config_scenario(name.c_str(), &cfg.ptr);
    if (s != SKDV_OK) return report_error(s);
    if (int rc = apply_overrides(cfg.ptr, overrides)) return rc;
    RunHandle run;
    s = skdv_scenario_run(name.c_str(), cfg.ptr, &run.ptr);
    if (s != SKDV_OK) return report_error(s);
    print_warnings(run.ptr);
    print_residuals(run.ptr);
    s = skdv_run_write(run.ptr, outdir.c_str());
    if (s != SKDV_OK) return report_error(s);
    skdv_verdict v = SKDV_VERDICT_NONE;
    skdv_run_verdict(run.ptr, &v);
    std::printf("verdict: %s (details in %s/verdict.json)\n", verdict_text(v), outdir.c_str());
    return static_cast<int>(v);
}

int cmd_validate(const std::string& outdir) {
    skdv_operator_report reports[2];
    skdv_status s = skdv_validate_boundary_ops(outdir.c_str(), reports);
    if (s != SKDV_OK) return report_error(s);
    bool ok = true;
    std::printf("%-3s %-12s %12s %12s %14s %8s\n", "op", "profile", "trace_err", "pde_resid", "normalization",
                "order");
    for (const auto& r : reports) {
        std::printf("%-3s %-12s %12.3e %12.3e %14.8f %8.4f\n", r.op, r.profile, r.trace_error, r.pde_residual,
                    r.normalization_constant, r.convergence_order);
        ok = ok && r.trace_error <= 1e-3 && r.pde_residual <= 1e-3 && r.convergence_order >= 1.8 &&
             r.convergence_order <= 2.2;
    }
    std::printf("validation files written to %s\n", outdir.c_str());
    return ok ? kExitOk : kExitFail;
}

int cmd_converge(const skdv_mms_options& opt, const std::string& outdir) {
    skdv_mms_report rep{};
    skdv_status s = skdv_convergence_study(&opt, outdir.c_str(), &rep);
    if (s != SKDV_OK) return report_error(s);
    std::printf("%8s %10s %14s\n", "cells", "dt", "L2 error");
    for (int i = 0; i < rep.levels; ++i) std::printf("%8d %10.3g %14.6e\n", rep.cells[i], rep.dt[i], rep.error[i]);
    std::printf("fitted order %.4f%s\n", rep.order, rep.monotone ? "" : "  (errors not monotone)");
    const bool ok = rep.monotone && std::isfinite(rep.order) && rep.order >= 1.8 && rep.order <= 2.2;
    if (opt.amplitude == 0.0) return kExitOk;
    return ok ? kExitOk : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Schrodinger-KdV half-line solver"};
    app.require_subcommand(1);
    std::string outdir;

    std::string config_path;
    std::vector<std::string> overrides;
    auto* run = app.add_subcommand("run", "integrate a configuration file");
    run->add_option("config", config_path, "INI configuration")->required();
    run->add_option("--override,-s", overrides, "section.key=value (repeatable)");
    run->add_option("--out,-o", outdir, "output directory (default out/<tag>)");

    std::string scenario;
    auto* sc = app.add_subcommand("scenario", "run a theorem check: t13, t14a or t14b");
    sc->add_option("name", scenario)->required()->check(CLI::IsMember({"t13", "t14a", "t14b"}, CLI::ignore_case));
    sc->add_option("--override,-s", overrides, "section.key=value (repeatable)");
    sc->add_option("--out,-o", outdir, "output directory (default out/<name>)");

    auto* val = app.add_subcommand("validate-boundary-ops", "check the L and V boundary operators");
    val->add_option("--out,-o", outdir, "output directory (default out/validation)");

    skdv_mms_options mms;
    skdv_mms_default_options(&mms);
    std::string direction = "right";
    auto* conv = app.add_subcommand("converge", "manufactured-solution convergence study");
    conv->add_option("--direction", direction)->check(CLI::IsMember({"right", "left"}));
    conv->add_option("--cells", mms.base_cells, "coarsest cell count")->capture_default_str();
    conv->add_option("--dt", mms.base_dt, "coarsest time step")->capture_default_str();
    conv->add_option("--levels", mms.levels, "number of halvings")->capture_default_str();
    conv->add_option("--amplitude", mms.amplitude, "amplitude of the manufactured pair")->capture_default_str();
    conv->add_option("--out,-o", outdir, "output directory (default out/converge)");

    double x = 0.0;
    auto* airy = app.add_subcommand("airy", "print Ai(x)");
    airy->add_option("x", x)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        std::fputs(app.help().c_str(), stderr);
        return kExitUsage;
    }

    auto out_or = [&](const std::string& fallback) { return outdir.empty() ? "out/" + fallback : outdir; };
    if (*run) return cmd_run(config_path, overrides, out_or("run"));
    if (*sc) {
        std::string lower = scenario;
        for (auto& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        return cmd_scenario(lower, overrides, out_or(lower));
    }
    if (*val) return cmd_validate(out_or("validation"));
    if (*conv) {
        mms.left = direction == "left" ? 1 : 0;
        return cmd_converge(mms, out_or("converge"));
    }
    if (*airy) {
        double value = 0.0;
        skdv_status s = skdv_airy(x, &value);
        if (s != SKDV_OK) return report_error(s);
        std::printf("%.10f\n", value);
        return kExitOk;
    }
    return kExitUsage;
}
