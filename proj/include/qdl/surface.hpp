#pragma once

#include <string>
#include <vector>

namespace qdl {

// Combinatorial model of a graded marked surface cut by a full formal closed
// arc system. Each polygon of the decomposition carries exactly one boundary
// segment; all other sides are oriented arcs. Polygons are listed
// counterclockwise (surface orientation), rotated so the boundary segment
// comes first. Angle degrees sit at the corners between consecutive arc
// sides and are the intersection indices of the arcs at the shared marked
// point.

struct ArcSide {
  int arc = -1;
  bool reversed = false;
};

struct PolygonSide {
  bool is_boundary = false;
  ArcSide arc;  // valid when !is_boundary
};

struct Polygon {
  std::vector<PolygonSide> sides;
  std::vector<int> degrees;  // one per consecutive arc-side pair
};

struct ArcSystem {
  int num_arcs = 0;
  std::vector<Polygon> polygons;
};

struct MarkedSurfaceData {
  int genus = 0;
  std::vector<int> boundary_orders;   // k_1..k_b, marked points per component
  std::vector<int> boundary_indices;  // l_1..l_b
  std::string lp_data;                // opaque LP_g payload, never interpreted
};

// A fan is the clockwise-ordered list of arc ends incident to one marked
// point, with the angle degree between each consecutive pair. Arc indices are
// listed in chain order; a loop arc shows up twice.
struct Fan {
  std::vector<int> arcs;
  std::vector<int> degrees;  // size arcs.size() - 1
};

struct SurfaceAnalysis {
  std::vector<std::string> violations;
  std::vector<Fan> fans;           // one per marked point
  std::vector<int> fan_component;  // boundary component of each fan
  std::vector<int> k;              // marked points per boundary component
  std::vector<int> l;              // boundary index per component
  int num_polygons = 0;
  int num_arcs = 0;
};

// Full structural pass: incidence checks, Euler characteristic against the
// genus, fan chaining and the boundary walk. Collects violations instead of
// stopping at the first problem; fans/k/l are only meaningful when the
// violation list is empty. Passing genus < 0 skips the genus-dependent
// checks (Euler characteristic, excluded disk).
SurfaceAnalysis analyze_arc_system(const ArcSystem& sys, int genus);

// Fans only; throws std::runtime_error on structural violations.
std::vector<Fan> arc_fans(const ArcSystem& sys);

std::vector<std::string> validate_arc_system(const ArcSystem& sys,
                                             const MarkedSurfaceData& surf);

// Computes the numerical data (g, b, k, l) of the surface. Throws
// std::runtime_error on structural violations or when the grading input is
// inconsistent (sum l_i != 4 - 4g).
MarkedSurfaceData numerical_data(const ArcSystem& sys, int genus);

// Rank of the hat homology group: n = 2g - 2 + b + sum k_i.
int hat_rank(const MarkedSurfaceData& surf);

}  // namespace qdl
