#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "fcmono/classifier.hpp"
#include "fcmono/decomposition.hpp"
#include "fcmono/tables.hpp"

namespace fcmono {

using Json = nlohmann::json;

// {rows, cols, field_order, entries}; entries row-major as CycNum strings.
Json matrix_json(const CycMatrix& m);
Json params_json(const ParamSet& p);
// Accepts {n, a, b, c: [...]} with rationals as strings or integers.
ParamSet parse_params_json(const Json& j);

Json classification_json(const ClassificationReport& r);
Json structure_json(const StructureReport& r);
Json decomposition_json(const DecompositionReport& r);
Json cardinalities_json(const Cardinalities& c);
Json table_json(TableId t, const std::vector<TableResult>& rows);

std::string classification_text(const ClassificationReport& r);
std::string structure_text(const StructureReport& r);
std::string decomposition_text(const DecompositionReport& r);
std::string cardinalities_text(const ParamSet& p, const Cardinalities& c);
std::string table_text(TableId t, const std::vector<TableResult>& rows);

}  // namespace fcmono
