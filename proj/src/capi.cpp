#include "skdv/skdv.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "airy.hpp"
#include "config.hpp"
#include "errors.hpp"
#include "output.hpp"
#include "scenarios.hpp"

struct skdv_config {
    skdv::ConfigMap map;
};

struct skdv_run {
    skdv::SimConfig config;
    skdv::RunResult result;
    std::optional<skdv::TheoremVerdict> verdict;
};

namespace {

thread_local std::string last_error;

skdv_status fail(skdv_status s, const std::string& msg) {
    last_error = msg;
    return s;
}

// Runs body and converts any exception into a status code.
template <class F>
skdv_status guarded(F&& body) {
    try {
        last_error.clear();
        body();
        return SKDV_OK;
    } catch (const skdv::ConfigError& e) {
        return fail(SKDV_E_CONFIG, e.what());
    } catch (const skdv::RangeError& e) {
        return fail(SKDV_E_RANGE, e.what());
    } catch (const skdv::ConvergenceError& e) {
        return fail(SKDV_E_CONVERGENCE, e.what());
    } catch (const skdv::NumericalHalt& e) {
        return fail(SKDV_E_HALTED, e.what());
    } catch (const skdv::IoError& e) {
        return fail(SKDV_E_IO, e.what());
    } catch (const std::filesystem::filesystem_error& e) {
        return fail(SKDV_E_IO, e.what());
    } catch (const std::exception& e) {
        return fail(SKDV_E_INTERNAL, e.what());
    } catch (...) {
        return fail(SKDV_E_INTERNAL, "unknown exception");
    }
}

#define SKDV_REQUIRE(ptr)                                                   \
    do {                                                                    \
        if (!(ptr)) return fail(SKDV_E_ARGUMENT, #ptr " must not be NULL"); \
    } while (0)

void copy_text(char* dst, std::size_t cap, const std::string& src) {
    std::strncpy(dst, src.c_str(), cap - 1);
    dst[cap - 1] = '\0';
}

}  // namespace

extern "C" {

const char* skdv_last_error(void) { return last_error.c_str(); }

const char* skdv_version(void) { return "0.1.0"; }

const char* skdv_status_name(skdv_status status) {
    switch (status) {
        case SKDV_OK: return "ok";
        case SKDV_E_ARGUMENT: return "invalid argument";
        case SKDV_E_CONFIG: return "configuration error";
        case SKDV_E_RANGE: return "range error";
        case SKDV_E_CONVERGENCE: return "convergence error";
        case SKDV_E_HALTED: return "numerical halt";
        case SKDV_E_IO: return "i/o error";
        case SKDV_E_INTERNAL: return "internal error";
    }
    return "unknown status";
}

skdv_status skdv_airy(double x, double* value) {
    SKDV_REQUIRE(value);
    return guarded([&] { *value = skdv::airy_ai(x); });
}

skdv_status skdv_airy_kernel(double x, double* value) {
    SKDV_REQUIRE(value);
    return guarded([&] { *value = skdv::airy_kernel(x); });
}

skdv_status skdv_config_new(skdv_config** out) {
    SKDV_REQUIRE(out);
    *out = nullptr;
    return guarded([&] { *out = new skdv_config{}; });
}

skdv_status skdv_config_load(const char* path, skdv_config** out) {
    SKDV_REQUIRE(path);
    SKDV_REQUIRE(out);
    *out = nullptr;
    return guarded([&] { *out = new skdv_config{skdv::load_config_file(path)}; });
}

skdv_status skdv_config_parse(const char* ini_text, skdv_config** out) {
    SKDV_REQUIRE(ini_text);
    SKDV_REQUIRE(out);
    *out = nullptr;
    return guarded([&] { *out = new skdv_config{skdv::parse_config_text(ini_text)}; });
}

skdv_status skdv_config_scenario(const char* name, skdv_config** out) {
    SKDV_REQUIRE(name);
    SKDV_REQUIRE(out);
    *out = nullptr;
    return guarded([&] { *out = new skdv_config{skdv::scenario_defaults(skdv::parse_scenario(name))}; });
}

skdv_status skdv_config_set(skdv_config* cfg, const char* key, const char* value) {
    SKDV_REQUIRE(cfg);
    SKDV_REQUIRE(key);
    SKDV_REQUIRE(value);
    return guarded([&] { cfg->map.set(key, value); });
}

skdv_status skdv_config_override(skdv_config* cfg, const char* assignment) {
    SKDV_REQUIRE(cfg);
    SKDV_REQUIRE(assignment);
    return guarded([&] { skdv::apply_override(cfg->map, assignment); });
}

skdv_status skdv_config_validate(const skdv_config* cfg) {
    SKDV_REQUIRE(cfg);
    return guarded([&] { skdv::build_config(cfg->map); });
}

void skdv_config_free(skdv_config* cfg) { delete cfg; }

skdv_status skdv_run_create(const skdv_config* cfg, skdv_run** out) {
    SKDV_REQUIRE(cfg);
    SKDV_REQUIRE(out);
    *out = nullptr;
    return guarded([&] {
        auto r = std::make_unique<skdv_run>();
        r->config = skdv::build_config(cfg->map);
        r->result = skdv::run(r->config);
        *out = r.release();
    });
}

skdv_status skdv_scenario_run(const char* name, const skdv_config* cfg, skdv_run** out) {
    SKDV_REQUIRE(name);
    SKDV_REQUIRE(out);
    *out = nullptr;
    return guarded([&] {
        const skdv::Scenario s = skdv::parse_scenario(name);
        const skdv::ConfigMap map = cfg ? cfg->map : skdv::scenario_defaults(s);
        skdv::ScenarioOutcome o = skdv::run_scenario(s, map);
        auto r = std::make_unique<skdv_run>();
        r->config = std::move(o.config);
        r->result = std::move(o.run);
        r->verdict = std::move(o.verdict);
        *out = r.release();
    });
}

skdv_status skdv_run_halted(const skdv_run* run, int* halted, double* halt_time) {
    SKDV_REQUIRE(run);
    SKDV_REQUIRE(halted);
    *halted = run->result.status == skdv::RunStatus::Halted ? 1 : 0;
    if (halt_time) *halt_time = run->result.halt_time;
    return SKDV_OK;
}

skdv_status skdv_run_verdict(const skdv_run* run, skdv_verdict* verdict) {
    SKDV_REQUIRE(run);
    SKDV_REQUIRE(verdict);
    *verdict = run->verdict ? static_cast<skdv_verdict>(skdv::verdict_exit_code(run->verdict->status))
                            : SKDV_VERDICT_NONE;
    return SKDV_OK;
}

skdv_status skdv_run_sample_count(const skdv_run* run, size_t* count) {
    SKDV_REQUIRE(run);
    SKDV_REQUIRE(count);
    *count = run->result.residuals.records.size();
    return SKDV_OK;
}

skdv_status skdv_run_column(const skdv_run* run, const char* column, double* out, size_t capacity) {
    SKDV_REQUIRE(run);
    SKDV_REQUIRE(column);
    const auto& recs = run->result.residuals.records;
    if (capacity < recs.size()) return fail(SKDV_E_ARGUMENT, "output buffer is smaller than the sample count");
    if (!out && !recs.empty()) return fail(SKDV_E_ARGUMENT, "out must not be NULL");
    const auto& cols = skdv::series_columns();
    if (std::find(cols.begin(), cols.end(), column) == cols.end())
        return fail(SKDV_E_ARGUMENT, std::string("unknown series column '") + column + "'");
    return guarded([&] {
        for (std::size_t i = 0; i < recs.size(); ++i) out[i] = skdv::record_column(recs[i], column);
    });
}

skdv_status skdv_run_residuals(const skdv_run* run, skdv_residuals* out) {
    SKDV_REQUIRE(run);
    SKDV_REQUIRE(out);
    const auto& r = run->result.residuals;
    *out = {r.r_mass, r.r_moment, r.r_energy, r.r_first_moment_rate, 0.0, 0.0};
    if (run->config.direction == skdv::Direction::Left && run->config.signals.homogeneous()) {
        out->r_virial_mid = r.r_virial;
        out->r_virial_max = r.r_virial_max;
    }
    return SKDV_OK;
}

skdv_status skdv_run_warning_count(const skdv_run* run, size_t* count) {
    SKDV_REQUIRE(run);
    SKDV_REQUIRE(count);
    *count = run->result.warnings.size();
    return SKDV_OK;
}

skdv_status skdv_run_warning(const skdv_run* run, size_t index, const char** text) {
    SKDV_REQUIRE(run);
    SKDV_REQUIRE(text);
    if (index >= run->result.warnings.size()) return fail(SKDV_E_ARGUMENT, "warning index out of range");
    *text = run->result.warnings[index].c_str();
    return SKDV_OK;
}

skdv_status skdv_run_write(const skdv_run* run, const char* outdir) {
    SKDV_REQUIRE(run);
    SKDV_REQUIRE(outdir);
    return guarded([&] {
        skdv::write_run_outputs(outdir, run->result, run->config, run->verdict ? &*run->verdict : nullptr);
    });
}

void skdv_run_free(skdv_run* run) { delete run; }

skdv_status skdv_validate_boundary_ops(const char* outdir, skdv_operator_report reports[2]) {
    SKDV_REQUIRE(reports);
    return guarded([&] {
        const skdv::BoundaryValidation v = skdv::validate_boundary_operators();
        if (outdir) skdv::write_boundary_validation(outdir, v);
        for (int i = 0; i < 2; ++i) {
            const auto& c = v.checks.at(i);
            copy_text(reports[i].op, sizeof reports[i].op, c.op);
            copy_text(reports[i].profile, sizeof reports[i].profile, c.profile);
            reports[i].trace_error = c.trace_error;
            reports[i].pde_residual = c.pde_residual;
            reports[i].normalization_constant = c.normalization_constant;
            reports[i].convergence_order = c.convergence_order;
        }
    });
}

void skdv_mms_default_options(skdv_mms_options* opt) {
    if (!opt) return;
    const auto res = skdv::default_mms_resolutions();
    opt->left = 0;
    opt->levels = static_cast<int>(res.size());
    opt->base_cells = res.front().cells;
    opt->base_dt = res.front().dt;
    opt->t_final = 0.5;
    opt->amplitude = 1.0;
}

skdv_status skdv_convergence_study(const skdv_mms_options* opt, const char* outdir, skdv_mms_report* report) {
    SKDV_REQUIRE(opt);
    SKDV_REQUIRE(report);
    if (opt->levels > SKDV_MMS_MAX_LEVELS) return fail(SKDV_E_ARGUMENT, "too many levels");
    if (opt->base_cells <= 0 || !(opt->base_dt > 0.0)) return fail(SKDV_E_CONFIG, "base resolution must be positive");
    return guarded([&] {
        std::vector<skdv::Resolution> res;
        for (int k = 0; k < opt->levels; ++k)
            res.push_back({opt->base_cells << k, opt->base_dt / static_cast<double>(1 << k)});
        skdv::MmsOptions mo;
        mo.direction = opt->left ? skdv::Direction::Left : skdv::Direction::Right;
        mo.t_final = opt->t_final;
        mo.amplitude = opt->amplitude;
        const skdv::MmsReport rep = skdv::convergence_study(res, mo);
        if (outdir) {
            std::filesystem::create_directories(outdir);
            skdv::write_json((std::filesystem::path(outdir) / "convergence.json").string(), skdv::mms_report_json(rep));
        }
        *report = {};
        report->levels = static_cast<int>(rep.levels.size());
        for (std::size_t i = 0; i < rep.levels.size(); ++i) {
            report->cells[i] = rep.levels[i].cells;
            report->dt[i] = rep.levels[i].dt;
            report->error[i] = rep.levels[i].error;
        }
        report->order = rep.order;
        report->monotone = rep.monotone ? 1 : 0;
    });
}

}  // extern "C"
