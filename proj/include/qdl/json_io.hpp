#pragma once

#include <json.hpp>

#include "qdl/cuts.hpp"
#include "qdl/flatgeo.hpp"
#include "qdl/hurwitz.hpp"
#include "qdl/periods.hpp"
#include "qdl/qstab.hpp"
#include "qdl/quiver.hpp"
#include "qdl/surface.hpp"

namespace qdl {

using json = nlohmann::json;

// Complex numbers travel as [re, im] everywhere.
json complex_to_json(cplx z);
cplx complex_from_json(const json& j);

// Arc system file: {"genus": g, "num_arcs": n, "polygons": [{"sides":
// [{"boundary": true} | {"arc": i, "reversed": false}], "degrees": [...]}]}.
ArcSystem arc_system_from_json(const json& j);
int genus_from_json(const json& j);

// Cover file: {"num": [...], "den": [...], "poles": [{"z": [re,im], "k": k,
// "at_infinity": false}], "l": [...], "s": [re,im], "flavor":
// "plain"|"cy_s"|"exp_type"}. Polynomial coefficients ascending.
QDifferential qdiff_from_json(const json& j);
json qdiff_to_json(const QDifferential& q);

// Cut graph file: {"whites": n, "demands": [...], "edges": [[w,b], ...]}.
CutGraph cut_graph_from_json(const json& j);
json matching_to_json(const MatchingResult& r);

// Paths file: {"paths": [{"polyline": [[re,im],...], "sheet_offsets": [...],
// "branch_sign": 1, "endpoint_a": -1, "endpoint_b": -1}]}.
std::vector<SheetPath> sheet_paths_from_json(const json& j);

// Stability file: {"labels": [...], "charges": [[re,im],...], "phases":
// [...], "hom_degrees": [[from,to,degree],...]}.
StabilityDatum stability_from_json(const json& j);
json qstab_to_json(const QStabilityDatum& d);

json surface_analysis_to_json(const SurfaceAnalysis& a);
json strip_decomposition_to_json(const StripDecomposition& dec);

// SVG rendering of a strip decomposition: separatrices in black, strip
// connections in red, singularity markers on top.
std::string foliation_svg(const QDifferential& q,
                          const StripDecomposition& dec);

}  // namespace qdl
