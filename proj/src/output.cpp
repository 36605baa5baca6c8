#include "output.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>

#include "errors.hpp"

namespace skdv {

namespace {

using Getter = double FunctionalRecord::*;

const std::vector<std::pair<std::string, Getter>>& column_table() {
    static const std::vector<std::pair<std::string, Getter>> table = {
        {"t", &FunctionalRecord::t},
        {"M", &FunctionalRecord::M},
        {"Q", &FunctionalRecord::Q},
        {"E", &FunctionalRecord::E},
        {"Qu", &FunctionalRecord::Qu},
        {"Qv", &FunctionalRecord::Qv},
        {"E1", &FunctionalRecord::E1},
        {"E2", &FunctionalRecord::E2},
        {"w_u1", &FunctionalRecord::w_u1},
        {"w_v1", &FunctionalRecord::w_v1},
        {"w_u2", &FunctionalRecord::w_u2},
        {"eta", &FunctionalRecord::eta},
        {"eta_d2_fd", &FunctionalRecord::eta_d2_fd},
        {"eta_d2_rhs", &FunctionalRecord::eta_d2_rhs},
        {"P", &FunctionalRecord::P},
        {"r_mass", &FunctionalRecord::r_mass},
        {"r_moment", &FunctionalRecord::r_moment},
        {"r_energy", &FunctionalRecord::r_energy},
    };
    return table;
}

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory '" + dir + "': " + ec.message());
}

json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

}  // namespace

const std::vector<std::string>& series_columns() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (const auto& [name, _] : column_table()) n.push_back(name);
        return n;
    }();
    return names;
}

double record_column(const FunctionalRecord& r, const std::string& column) {
    for (const auto& [name, member] : column_table())
        if (name == column) return r.*member;
    throw ConfigError("unknown series column '" + column + "'");
}

void write_series_csv(std::ostream& out, const std::vector<FunctionalRecord>& records) {
    const auto& cols = column_table();
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i].first;
    out << '\n';
    for (const auto& r : records) {
        for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << format_double(r.*(cols[i].second));
        out << '\n';
    }
}

void write_series_csv(const std::string& path, const std::vector<FunctionalRecord>& records) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write '" + path + "'");
    write_series_csv(out, records);
}

void write_laws_csv(std::ostream& out, const std::vector<FunctionalRecord>& records, Direction direction) {
    out << "t,M,M_law,Q,Q_law,E,E_law,int_mass_flux,int_moment_flux,int_energy_flux\n";
    if (records.empty()) return;
    const double sgn = direction == Direction::Right ? 1.0 : -1.0;
    const FunctionalRecord& r0 = records.front();
    for (const auto& r : records) {
        const double row[] = {r.t,
                              r.M,
                              r0.M + sgn * r.int_mass_flux,
                              r.Q,
                              r0.Q - sgn * r.int_moment_flux,
                              r.E,
                              r0.E - sgn * r.int_energy_flux,
                              r.int_mass_flux,
                              r.int_moment_flux,
                              r.int_energy_flux};
        for (std::size_t i = 0; i < std::size(row); ++i) out << (i ? "," : "") << format_double(row[i]);
        out << '\n';
    }
}

json run_summary_json(const RunResult& r, const SimConfig& cfg) {
    json j;
    j["tag"] = r.tag;
    j["direction"] = direction_name(r.grid.direction);
    j["grid"] = {{"length", r.grid.length}, {"cells", r.grid.cells}, {"h", r.grid.h}};
    j["coupling"] = {{"alpha", r.params.alpha}, {"beta", r.params.beta}, {"gamma", r.params.gamma}};
    j["time"] = {{"dt", cfg.dt}, {"t_final", cfg.t_final}, {"stride", cfg.stride}};
    j["homogeneous_boundary_data"] = cfg.signals.homogeneous();
    j["status"] = r.status == RunStatus::Completed ? "completed" : "halted";
    if (r.status == RunStatus::Halted) {
        j["halt_time"] = r.halt_time;
        j["halt_reason"] = r.halt_reason;
    }
    j["samples"] = r.residuals.records.size();
    if (!r.series.snapshots.empty()) {
        const auto& a = r.series.snapshots.front().f;
        const auto& b = r.series.snapshots.back().f;
        j["initial"] = {{"M", a.M}, {"Q", a.Q}, {"E", a.E}, {"P", a.P}};
        j["final"] = {{"t", r.series.snapshots.back().t}, {"M", b.M}, {"Q", b.Q}, {"E", b.E}, {"P", b.P}};
    }
    const LawResiduals& res = r.residuals;
    json residuals = {{"r_mass", res.r_mass},
                      {"r_moment", res.r_moment},
                      {"r_energy", res.r_energy},
                      {"r_first_moment_rate", res.r_first_moment_rate}};
    // The virial identity only holds with vanishing boundary data.
    if (r.grid.direction == Direction::Left && cfg.signals.homogeneous()) {
        residuals["r_virial_mid"] = res.r_virial;
        residuals["r_virial_max"] = res.r_virial_max;
    }
    j["max_residuals"] = residuals;
    j["outer_band_peak"] = r.outer_band_peak;
    j["warnings"] = r.warnings;
    return j;
}

json verdict_json(const TheoremVerdict& v) {
    json j;
    j["theorem"] = v.tag;
    j["verdict"] = verdict_status_name(v.status);
    j["exit_code"] = verdict_exit_code(v.status);
    json hyp = json::object();
    for (const auto& [name, value] : v.hypotheses) hyp[name] = finite_or_null(value);
    j["hypotheses"] = hyp;
    j["unmet_hypotheses"] = v.unmet;
    json checks = json::array();
    for (const auto& c : v.checks) {
        json cj;
        cj["quantity"] = c.quantity;
        cj["bound"] = c.bound;
        cj["margin"] = finite_or_null(c.margin);
        cj["slack_fraction"] = c.slack_fraction;
        cj["holds"] = c.holds;
        json t = json::array(), pred = json::array(), obs = json::array();
        for (const auto& s : c.samples) {
            t.push_back(s.t);
            pred.push_back(finite_or_null(s.predicted));
            obs.push_back(finite_or_null(s.observed));
        }
        cj["t"] = t;
        cj["predicted"] = pred;
        cj["observed"] = obs;
        checks.push_back(cj);
    }
    j["checks"] = checks;
    if (v.tag == "T14b" && v.status != VerdictStatus::HypothesesNotMet) {
        j["virial_residual_mid"] = v.virial_residual;
        j["virial_residual_max"] = v.virial_residual_max;
    }
    if (v.status == VerdictStatus::Halted) j["halt_time"] = v.halt_time;
    j["notes"] = v.notes;
    return j;
}

json operator_check_json(const OperatorCheck& c) {
    json j;
    j["operator"] = c.op;
    j["profile"] = c.profile;
    j["trace_error"] = c.trace_error;
    j["pde_residual"] = c.pde_residual;
    j["normalization_constant"] = c.normalization_constant;
    j["convergence_order"] = finite_or_null(c.convergence_order);
    j["trace_value"] = c.trace_value;
    if (c.op == "L") j["literal_branch_pde_residual"] = c.extra_residual;
    return j;
}

json cross_validation_json(const CrossValidation& c) {
    json j;
    j["equation"] = c.equation;
    j["direction"] = direction_name(c.direction);
    json levels = json::array();
    for (std::size_t i = 0; i < c.resolutions.size(); ++i)
        levels.push_back({{"cells", c.resolutions[i].cells},
                          {"dt", c.resolutions[i].dt},
                          {"discrepancy", c.discrepancies.at(i)}});
    j["levels"] = levels;
    j["order"] = finite_or_null(c.order);
    return j;
}

json mms_report_json(const MmsReport& r) {
    json j;
    json levels = json::array();
    for (const auto& l : r.levels)
        levels.push_back({{"cells", l.cells},
                          {"dt", l.dt},
                          {"error_u", l.error_u},
                          {"error_v", l.error_v},
                          {"error", l.error}});
    j["levels"] = levels;
    j["order"] = finite_or_null(r.order);
    j["monotone"] = r.monotone;
    j["warnings"] = r.warnings;
    return j;
}

void write_json(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << j.dump(2) << '\n';
}

void write_run_outputs(const std::string& outdir, const RunResult& r, const SimConfig& cfg,
                       const TheoremVerdict* verdict) {
    ensure_dir(outdir);
    const std::filesystem::path dir(outdir);
    write_series_csv((dir / "series.csv").string(), r.residuals.records);
    {
        std::ofstream laws(dir / "laws.csv");
        if (!laws) throw IoError("cannot write '" + (dir / "laws.csv").string() + "'");
        write_laws_csv(laws, r.residuals.records, r.grid.direction);
    }
    json summary = run_summary_json(r, cfg);
    if (verdict) {
        summary["verdict"] = verdict_status_name(verdict->status);
        json margins = json::array();
        for (const auto& c : verdict->checks) margins.push_back({{"quantity", c.quantity}, {"margin", c.margin}});
        summary["theorem_checks"] = margins;
        write_json((dir / "verdict.json").string(), verdict_json(*verdict));
    }
    write_json((dir / "summary.json").string(), summary);
}

void write_boundary_validation(const std::string& outdir, const BoundaryValidation& v) {
    ensure_dir(outdir);
    const std::filesystem::path dir(outdir);
    for (const auto& c : v.checks) write_json((dir / ("validation_" + c.op + ".json")).string(), operator_check_json(c));
    json cross = json::array();
    for (const auto& c : v.cross) cross.push_back(cross_validation_json(c));
    write_json((dir / "cross_validation.json").string(), cross);
}

}  // namespace skdv
