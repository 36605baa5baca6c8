#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "boundary_ops.hpp"
#include "config.hpp"
#include "stepper.hpp"

namespace skdv {

enum class VerdictStatus { Pass, Fail, HypothesesNotMet, Halted };

const char* verdict_status_name(VerdictStatus s);
// 0 pass, 2 fail, 3 hypotheses not met, 4 halted.
int verdict_exit_code(VerdictStatus s);

struct BoundSample {
    double t = 0.0;
    double predicted = 0.0;
    double observed = 0.0;
};

// One growth inequality observed along a run: observed(t) >= predicted(t) is
// required up to slack_fraction * |predicted(t)| at every sample.
struct BoundCheck {
    std::string quantity;
    std::string bound;
    std::vector<BoundSample> samples;
    double margin = 0.0;           // min over t > 0 of (observed - predicted)
    double slack_fraction = 0.05;
    bool holds = true;
};

struct TheoremVerdict {
    std::string tag;  // T13, T14a, T14b
    VerdictStatus status = VerdictStatus::HypothesesNotMet;
    std::vector<std::pair<std::string, double>> hypotheses;
    std::vector<std::string> unmet;
    std::vector<BoundCheck> checks;  // the first one is the headline bound
    double virial_residual = 0.0;     // T14b: at mid-run
    double virial_residual_max = 0.0;
    double halt_time = 0.0;
    std::vector<std::string> notes;
};

enum class Scenario { T13, T14a, T14b };

Scenario parse_scenario(const std::string& name);
const char* scenario_tag(Scenario s);

// Default configuration of each scenario, as config entries that overrides may replace.
ConfigMap scenario_defaults(Scenario s);

struct ScenarioOutcome {
    SimConfig config;
    TheoremVerdict verdict;
    RunResult run;
};

// When the hypotheses fail the run is reduced to its t = 0 record.
ScenarioOutcome scenario_global_right(const ConfigMap& config);
ScenarioOutcome scenario_growth_left(const ConfigMap& config, char part);
ScenarioOutcome run_scenario(Scenario s, const ConfigMap& config);

// Manufactured pair u* = A e^{it} e^{-(x-c)^2}, v* = A e^{-(x-c)^2} cos t and the
// sources that make it an exact solution of the forced system.
struct ManufacturedSolution {
    double amplitude = 1.0;
    double center = 10.0;
    CouplingParams coupling{1.0, 1.0, 1.0};

    cplx u(double x, double t) const;
    double v(double x, double t) const;
    double vx(double x, double t) const;
    cplx source_u(double x, double t) const;
    double source_v(double x, double t) const;
};

struct MmsOptions {
    Direction direction = Direction::Right;
    double length = 20.0;
    double center_distance = 10.0;  // |c|
    double t_final = 0.5;
    CouplingParams coupling{1.0, 1.0, 1.0};
    double amplitude = 1.0;
    bool parallel = true;
};

struct MmsLevel {
    int cells = 0;
    double dt = 0.0;
    double error_u = 0.0, error_v = 0.0, error = 0.0;  // L2 at t_final
};

struct MmsReport {
    std::vector<MmsLevel> levels;
    double order = 0.0;
    bool monotone = true;
    std::vector<std::string> warnings;
};

std::vector<Resolution> default_mms_resolutions();
MmsReport convergence_study(const std::vector<Resolution>& resolutions, const MmsOptions& opt = {});

struct BoundaryValidation {
    std::vector<OperatorCheck> checks;  // "L" then "V"
    std::vector<CrossValidation> cross;
};

// t^2 e^{-t} profile at t = 1; cross validation against the steppers at
// (1000, 0.01), (2000, 0.005), (4000, 0.0025).
BoundaryValidation validate_boundary_operators();

}  // namespace skdv
