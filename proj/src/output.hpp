#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "scenarios.hpp"

namespace skdv {

using json = nlohmann::ordered_json;

const std::vector<std::string>& series_columns();

// Header row plus one row per record; every number printed with %.17g.
void write_series_csv(std::ostream& out, const std::vector<FunctionalRecord>& records);
void write_series_csv(const std::string& path, const std::vector<FunctionalRecord>& records);

// Each conserved quantity next to the value its boundary-flux law predicts, and
// the cumulative flux integrals behind the prediction.
void write_laws_csv(std::ostream& out, const std::vector<FunctionalRecord>& records, Direction direction);

double record_column(const FunctionalRecord& r, const std::string& column);

json run_summary_json(const RunResult& r, const SimConfig& cfg);
json verdict_json(const TheoremVerdict& v);
json operator_check_json(const OperatorCheck& c);
json cross_validation_json(const CrossValidation& c);
json mms_report_json(const MmsReport& r);

void write_json(const std::string& path, const json& j);

// series.csv, laws.csv and summary.json, plus verdict.json when a verdict is given.
void write_run_outputs(const std::string& outdir, const RunResult& r, const SimConfig& cfg,
                       const TheoremVerdict* verdict = nullptr);

// validation_L.json, validation_V.json and cross_validation.json.
void write_boundary_validation(const std::string& outdir, const BoundaryValidation& v);

}  // namespace skdv
