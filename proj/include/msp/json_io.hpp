#pragma once

#include <string>

#include <json.hpp>

#include "msp/harness.hpp"
#include "msp/matroid.hpp"

namespace msp {

// Instance schema:
// {"kind": "uniform"|"laminar"|"rank2"|"graphic", "n": int, "order": [ids],
//  "r": int | "sets": [{"members": [...], "cap": int}] | "classes": [[ids]] |
//  "vertices": int, "edges": [[u,v],...], "root": int (optional)}
nlohmann::json instance_to_json(const MatroidInstance& m);
MatroidInstance instance_from_json(const nlohmann::json& j);

MatroidInstance load_instance(const std::string& path);
void save_instance(const MatroidInstance& m, const std::string& path);

// Doubles rounded to six significant digits for stable, readable output.
nlohmann::json json_number(double v);

nlohmann::json report_to_json(const CompetitivenessReport& rep);
std::string report_to_csv(const CompetitivenessReport& rep);

nlohmann::json exact_to_json(const ExactResult& res);
nlohmann::json distribution_to_json(const DistributionReport& rep);

// Debug dump: JSON lines, one record per improving time with fields
// {t, elem, opt, arc?}.
std::string trace_to_jsonl(const ImprovingTrace& trace);

}  // namespace msp
