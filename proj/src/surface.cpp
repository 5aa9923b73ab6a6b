#include "qdl/surface.hpp"

#include <numeric>
#include <stdexcept>

namespace qdl {

namespace {

// Arc ends are numbered 2*arc (tail) and 2*arc+1 (head).
int side_start_end(const ArcSide& s) { return 2 * s.arc + (s.reversed ? 1 : 0); }
int side_finish_end(const ArcSide& s) { return 2 * s.arc + (s.reversed ? 0 : 1); }

}  // namespace

SurfaceAnalysis analyze_arc_system(const ArcSystem& sys, int genus) {
  SurfaceAnalysis out;
  out.num_arcs = sys.num_arcs;
  out.num_polygons = static_cast<int>(sys.polygons.size());
  auto fail = [&](const std::string& msg) { out.violations.push_back(msg); };

  if (sys.num_arcs < 0) fail("negative arc count");
  if (sys.polygons.empty()) fail("no polygons");

  // Rotate each polygon so its boundary segment comes first; reject polygons
  // without exactly one boundary segment.
  struct NormPolygon {
    std::vector<ArcSide> arcs;  // in counterclockwise order after the segment
    std::vector<int> degrees;
  };
  std::vector<NormPolygon> polys(sys.polygons.size());
  for (size_t p = 0; p < sys.polygons.size(); ++p) {
    const Polygon& poly = sys.polygons[p];
    int boundary_at = -1;
    int boundary_count = 0;
    for (size_t i = 0; i < poly.sides.size(); ++i) {
      if (poly.sides[i].is_boundary) {
        ++boundary_count;
        boundary_at = static_cast<int>(i);
      }
    }
    if (boundary_count != 1) {
      fail("polygon " + std::to_string(p) + ": not full formal (" +
           std::to_string(boundary_count) + " boundary segments)");
      continue;
    }
    NormPolygon& np = polys[p];
    size_t n = poly.sides.size();
    for (size_t i = 1; i < n; ++i) {
      const PolygonSide& side = poly.sides[(boundary_at + i) % n];
      if (side.arc.arc < 0 || side.arc.arc >= sys.num_arcs) {
        fail("polygon " + std::to_string(p) + ": arc index out of range");
        continue;
      }
      np.arcs.push_back(side.arc);
    }
    np.degrees = poly.degrees;
    size_t want = np.arcs.empty() ? 0 : np.arcs.size() - 1;
    if (np.degrees.size() != want)
      fail("polygon " + std::to_string(p) + ": expected " +
           std::to_string(want) + " angle degrees, got " +
           std::to_string(np.degrees.size()));
  }
  if (!out.violations.empty()) return out;

  // Every arc must be traversed exactly once in each direction across all
  // polygon sides (orientability of the gluing).
  std::vector<int> fwd(sys.num_arcs, 0), rev(sys.num_arcs, 0);
  for (const NormPolygon& np : polys)
    for (const ArcSide& s : np.arcs) (s.reversed ? rev : fwd)[s.arc]++;
  for (int a = 0; a < sys.num_arcs; ++a)
    if (fwd[a] != 1 || rev[a] != 1)
      fail("arc " + std::to_string(a) + ": appears " +
           std::to_string(fwd[a] + rev[a]) +
           " times (need once in each direction)");
  if (!out.violations.empty()) return out;

  // Chain the arc ends into fans. A corner between consecutive arc sides
  // links the finish end of the first to the start end of the second and
  // carries the angle degree of that corner.
  int num_ends = 2 * sys.num_arcs;
  std::vector<int> succ(num_ends, -1), pred(num_ends, -1);
  std::vector<int> succ_degree(num_ends, 0);
  // Polygon owning the corner (last arc side, boundary segment).
  std::vector<int> last_finish_owner(num_ends, -1);
  for (size_t p = 0; p < polys.size(); ++p) {
    const NormPolygon& np = polys[p];
    if (np.arcs.empty()) continue;
    for (size_t i = 0; i + 1 < np.arcs.size(); ++i) {
      int from = side_finish_end(np.arcs[i]);
      int to = side_start_end(np.arcs[i + 1]);
      succ[from] = to;
      succ_degree[from] = np.degrees[i];
      pred[to] = from;
    }
    last_finish_owner[side_finish_end(np.arcs.back())] = static_cast<int>(p);
  }

  // The only system without a bare arc end is the one-marked-point disk.
  bool no_arcs = sys.num_arcs == 0;
  if (no_arcs && polys.size() != 1)
    fail("system without arcs must be a single polygon");
  for (size_t p = 0; p < polys.size() && !no_arcs; ++p)
    if (polys[p].arcs.empty())
      fail("polygon " + std::to_string(p) +
           ": no arc sides in a multi-arc system");
  if (!out.violations.empty()) return out;

  // Collect fans: maximal successor chains, one per marked point.
  std::vector<int> end_fan(num_ends, -1);
  std::vector<int> chain_tail;  // tail end of each fan
  for (int e = 0; e < num_ends; ++e) {
    if (pred[e] != -1) continue;  // not a chain head
    int fan_id = static_cast<int>(out.fans.size());
    Fan fan;
    int cur = e;
    int guard = 0;
    while (true) {
      if (++guard > num_ends + 1) {
        fail("fan chain does not terminate");
        return out;
      }
      fan.arcs.push_back(cur / 2);
      end_fan[cur] = fan_id;
      if (succ[cur] == -1) {
        chain_tail.push_back(cur);
        break;
      }
      fan.degrees.push_back(succ_degree[cur]);
      cur = succ[cur];
    }
    out.fans.push_back(std::move(fan));
  }
  int covered = 0;
  for (int e = 0; e < num_ends; ++e)
    if (end_fan[e] != -1) ++covered;
  if (covered != num_ends) {
    fail("arc ends left over after fan chaining (closed corner cycle)");
    return out;
  }

  // Walk the boundary: polygon -> marked point after its segment -> polygon
  // owning that fan's tail corner.
  std::vector<int> poly_component(polys.size(), -1);
  out.fan_component.assign(out.fans.size(), -1);
  int components = 0;
  for (size_t start = 0; start < polys.size(); ++start) {
    if (poly_component[start] != -1) continue;
    int comp = components++;
    int marked_points = 0;
    int corner_sum = 0;  // sum of (degree - 1) over corners on this component
    size_t p = start;
    int guard = 0;
    while (true) {
      if (++guard > static_cast<int>(polys.size()) + 1) {
        fail("boundary walk does not close");
        return out;
      }
      poly_component[p] = comp;
      ++marked_points;
      if (no_arcs) break;  // single-polygon disk, one bare marked point
      int head = side_start_end(polys[p].arcs.front());
      int fan_id = end_fan[head];
      out.fan_component[fan_id] = comp;
      for (int d : out.fans[fan_id].degrees) corner_sum += d - 1;
      size_t next = static_cast<size_t>(last_finish_owner[chain_tail[fan_id]]);
      if (next == start) break;
      if (poly_component[next] != -1) {
        fail("boundary walk revisits a polygon before closing");
        return out;
      }
      p = next;
    }
    out.k.push_back(marked_points);
    // 2 - l_i is the winding number of the component, a sum of (index - 1)
    // over its marked points; each fan corner contributes its degree - 1.
    out.l.push_back(no_arcs ? 4 : 2 - corner_sum);
  }

  int b = components;
  int chi = out.num_polygons - out.num_arcs;
  if (genus < 0) return out;
  if (chi != 2 - 2 * genus - b)
    fail("Euler characteristic mismatch: #polygons - #arcs = " +
         std::to_string(chi) + ", expected " +
         std::to_string(2 - 2 * genus - b) + " for genus " +
         std::to_string(genus) + " with " + std::to_string(b) +
         " boundary components");
  if (genus == 0 && b == 1 && out.k.size() == 1 && out.k[0] == 2)
    fail("excluded surface: disk with two marked points");
  return out;
}

std::vector<Fan> arc_fans(const ArcSystem& sys) {
  SurfaceAnalysis a = analyze_arc_system(sys, -1);
  if (!a.violations.empty())
    throw std::runtime_error("invalid arc system: " + a.violations.front());
  return a.fans;
}

std::vector<std::string> validate_arc_system(const ArcSystem& sys,
                                             const MarkedSurfaceData& surf) {
  SurfaceAnalysis a = analyze_arc_system(sys, surf.genus);
  if (!a.violations.empty()) return a.violations;
  std::vector<std::string> v;
  if (!surf.boundary_orders.empty() && surf.boundary_orders != a.k)
    v.push_back("boundary marked-point counts disagree with declared k");
  if (!surf.boundary_indices.empty() && surf.boundary_indices != a.l)
    v.push_back("boundary indices disagree with declared l");
  return v;
}

MarkedSurfaceData numerical_data(const ArcSystem& sys, int genus) {
  SurfaceAnalysis a = analyze_arc_system(sys, genus);
  if (!a.violations.empty())
    throw std::runtime_error("invalid arc system: " + a.violations.front());
  MarkedSurfaceData surf;
  surf.genus = genus;
  surf.boundary_orders = a.k;
  surf.boundary_indices = a.l;
  int sum_l = std::accumulate(a.l.begin(), a.l.end(), 0);
  if (sum_l != 4 - 4 * genus)
    throw std::runtime_error(
        "inconsistent grading input: sum l_i = " + std::to_string(sum_l) +
        ", expected " + std::to_string(4 - 4 * genus));
  return surf;
}

int hat_rank(const MarkedSurfaceData& surf) {
  int sum_k = std::accumulate(surf.boundary_orders.begin(),
                              surf.boundary_orders.end(), 0);
  return 2 * surf.genus - 2 + static_cast<int>(surf.boundary_orders.size()) +
         sum_k;
}

}  // namespace qdl
