#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "errors.hpp"
#include "output.hpp"

using namespace skdv;
namespace fs = std::filesystem;

namespace {

SimConfig short_left_run() {
    ConfigMap m = scenario_defaults(Scenario::T14a);
    apply_override(m, "grid.cells=512");
    apply_override(m, "grid.length=30");
    apply_override(m, "time.dt=1e-3");
    apply_override(m, "time.t_final=0.1");
    apply_override(m, "time.stride=10");
    return build_config(m);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST(Output, SeriesHeaderIsFixed) {
    std::ostringstream os;
    write_series_csv(os, {});
    EXPECT_EQ(os.str(),
              "t,M,Q,E,Qu,Qv,E1,E2,w_u1,w_v1,w_u2,eta,eta_d2_fd,eta_d2_rhs,P,r_mass,r_moment,r_energy\n");
    EXPECT_EQ(series_columns().size(), 18u);
}

TEST(Output, RowsCarryFullPrecision) {
    FunctionalRecord r;
    r.t = 0.1;
    r.M = 1.0 / 3.0;
    std::ostringstream os;
    write_series_csv(os, {r});
    std::istringstream in(os.str());
    std::string header, row;
    std::getline(in, header);
    std::getline(in, row);
    EXPECT_EQ(row.rfind("0.10000000000000001,0.33333333333333331,", 0), 0u);
    EXPECT_EQ(std::stod(row.substr(row.find(',') + 1)), 1.0 / 3.0);
    EXPECT_DOUBLE_EQ(record_column(r, "M"), 1.0 / 3.0);
    EXPECT_THROW(record_column(r, "Z"), ConfigError);
}

TEST(Output, IdenticalConfigsGiveIdenticalFiles) {
    const SimConfig cfg = short_left_run();
    const fs::path a = fs::temp_directory_path() / "skdv_output_a", b = fs::temp_directory_path() / "skdv_output_b";
    fs::remove_all(a);
    fs::remove_all(b);
    write_run_outputs(a.string(), run(cfg), cfg);
    write_run_outputs(b.string(), run(cfg), cfg);
    for (const char* f : {"series.csv", "laws.csv", "summary.json"}) {
        const std::string first = slurp(a / f);
        EXPECT_FALSE(first.empty()) << f;
        EXPECT_EQ(first, slurp(b / f)) << f;
    }
    EXPECT_FALSE(fs::exists(a / "verdict.json"));
    fs::remove_all(a);
    fs::remove_all(b);
}

TEST(Output, LawColumnsTrackTheFunctionals) {
    const SimConfig cfg = short_left_run();
    const RunResult r = run(cfg);
    std::ostringstream os;
    write_laws_csv(os, r.residuals.records, cfg.direction);
    std::istringstream in(os.str());
    std::string line;
    std::getline(in, line);
    int rows = 0;
    while (std::getline(in, line)) {
        std::vector<double> v;
        std::stringstream ls(line);
        for (std::string cell; std::getline(ls, cell, ',');) v.push_back(std::stod(cell));
        ASSERT_EQ(v.size(), 10u);
        EXPECT_NEAR(v[1], v[2], 1e-10 * std::abs(v[1]));
        EXPECT_NEAR(v[3], v[4], 1e-2 * std::abs(v[3]));
        ++rows;
    }
    EXPECT_EQ(rows, static_cast<int>(r.residuals.records.size()));
}

TEST(Output, SummaryAndVerdictFields) {
    ConfigMap m = scenario_defaults(Scenario::T14a);
    apply_override(m, "initial.u0=zero");
    const ScenarioOutcome out = run_scenario(Scenario::T14a, m);
    const json v = verdict_json(out.verdict);
    EXPECT_EQ(v["theorem"], "T14a");
    EXPECT_EQ(v["verdict"], "hypotheses not met");
    EXPECT_EQ(v["exit_code"], 3);
    EXPECT_TRUE(v["hypotheses"].contains("Q0"));
    EXPECT_FALSE(v["unmet_hypotheses"].empty());

    const json s = run_summary_json(out.run, out.config);
    for (const char* key : {"tag", "direction", "grid", "coupling", "time", "status", "samples", "max_residuals"})
        EXPECT_TRUE(s.contains(key)) << key;
    EXPECT_TRUE(s["max_residuals"].contains("r_virial_mid"));
    EXPECT_EQ(s["status"], "completed");
}

TEST(Output, UnwritableDirectoryIsReported) {
    const SimConfig cfg = short_left_run();
    SimConfig instant = cfg;
    instant.t_final = 0.0;
    EXPECT_THROW(write_run_outputs("/proc/skdv_cannot_write", run(instant), instant), IoError);
}
