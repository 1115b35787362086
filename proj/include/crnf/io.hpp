#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "crnf/affine.hpp"
#include "crnf/cr.hpp"
#include "crnf/symmetry.hpp"

namespace crnf {

using json = nlohmann::json;

// {"chart": {"name", "variables", "weights", "pairing"}, "order": N | "exact",
//  "terms": [{"exp": [...], "coeff": "<scalar>"}]}
json to_json(const Series &s);
json chart_to_json(const Chart &c);
// Known charts come back as the shared instances, so same_chart() holds.
ChartPtr chart_from_json(const json &j);
Series series_from_json(const json &j);

// graphs add "kind": "cr_graph" | "affine_graph" and "label"
json to_json(const HypersurfaceGraph &g);
json to_json(const AffineGraph &g);
HypersurfaceGraph cr_graph_from_json(const json &j);
AffineGraph affine_graph_from_json(const json &j);

// {"kind": "field", "components": [series, ...]}
json to_json(const VectorField &X);
VectorField field_from_json(const json &j);

// "-" reads stdin. Syntax errors become parse_error with the byte offset.
json read_json_file(const std::string &path);

} // namespace crnf
