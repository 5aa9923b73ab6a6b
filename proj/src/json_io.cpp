#include "qdl/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qdl {

json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j) {
  if (j.is_number()) return cplx(j.get<double>(), 0.0);
  if (!j.is_array() || j.size() != 2)
    throw std::invalid_argument("complex value must be [re, im]");
  return cplx(j[0].get<double>(), j[1].get<double>());
}

namespace {

Poly poly_from_json(const json& j) {
  Poly p;
  for (const json& c : j) p.push_back(complex_from_json(c));
  if (p.empty()) p.push_back(cplx(0.0));
  return p;
}

json poly_to_json(const Poly& p) {
  json out = json::array();
  for (cplx c : p) out.push_back(complex_to_json(c));
  return out;
}

}  // namespace

ArcSystem arc_system_from_json(const json& j) {
  ArcSystem sys;
  sys.num_arcs = j.at("num_arcs").get<int>();
  for (const json& pj : j.at("polygons")) {
    Polygon poly;
    for (const json& sj : pj.at("sides")) {
      PolygonSide side;
      if (sj.contains("boundary") && sj.at("boundary").get<bool>()) {
        side.is_boundary = true;
      } else {
        side.arc.arc = sj.at("arc").get<int>();
        side.arc.reversed = sj.value("reversed", false);
      }
      poly.sides.push_back(side);
    }
    for (const json& dj : pj.at("degrees"))
      poly.degrees.push_back(dj.get<int>());
    sys.polygons.push_back(std::move(poly));
  }
  return sys;
}

int genus_from_json(const json& j) { return j.value("genus", 0); }

QDifferential qdiff_from_json(const json& j) {
  HurwitzCover c;
  c.num = poly_from_json(j.at("num"));
  c.den = j.contains("den") ? poly_from_json(j.at("den")) : Poly{cplx(1.0)};
  for (const json& pj : j.at("poles")) {
    PoleSpec p;
    p.at_infinity = pj.value("at_infinity", false);
    p.k = pj.at("k").get<int>();
    if (!p.at_infinity) p.z = complex_from_json(pj.at("z"));
    c.poles.push_back(p);
  }
  std::vector<int> l;
  for (const json& lj : j.at("l")) l.push_back(lj.get<int>());
  cplx s = complex_from_json(j.at("s"));
  std::string flavor = j.value("flavor", "plain");
  QFlavor fl;
  if (flavor == "plain")
    fl = QFlavor::plain;
  else if (flavor == "cy_s")
    fl = QFlavor::cy_s;
  else if (flavor == "exp_type")
    fl = QFlavor::exp_type;
  else
    throw std::invalid_argument("unknown flavor: " + flavor);
  return make_qdiff(c, l, s, fl);
}

json qdiff_to_json(const QDifferential& q) {
  json out;
  out["num"] = poly_to_json(q.cover.num);
  out["den"] = poly_to_json(q.cover.den);
  out["poles"] = json::array();
  for (const PoleSpec& p : q.cover.poles) {
    json pj;
    pj["k"] = p.k;
    pj["at_infinity"] = p.at_infinity;
    if (!p.at_infinity) pj["z"] = complex_to_json(p.z);
    out["poles"].push_back(pj);
  }
  out["l"] = q.l;
  out["s"] = complex_to_json(q.s);
  out["flavor"] = q.flavor == QFlavor::plain    ? "plain"
                  : q.flavor == QFlavor::cy_s   ? "cy_s"
                                                : "exp_type";
  out["zeros"] = json::array();
  for (cplx z : q.zeros) out["zeros"].push_back(complex_to_json(z));
  return out;
}

CutGraph cut_graph_from_json(const json& j) {
  CutGraph g;
  g.num_whites = j.at("whites").get<int>();
  for (const json& dj : j.at("demands")) g.demands.push_back(dj.get<int>());
  for (const json& ej : j.at("edges")) {
    if (!ej.is_array() || ej.size() != 2)
      throw std::invalid_argument("cut graph edge must be [white, black]");
    g.edges.push_back({ej[0].get<int>(), ej[1].get<int>()});
  }
  return g;
}

json matching_to_json(const MatchingResult& r) {
  json out;
  out["feasible"] = r.feasible;
  out["edges"] = r.edges;
  out["message"] = r.message;
  return out;
}

std::vector<SheetPath> sheet_paths_from_json(const json& j) {
  std::vector<SheetPath> out;
  for (const json& pj : j.at("paths")) {
    SheetPath p;
    for (const json& vj : pj.at("polyline"))
      p.polyline.push_back(complex_from_json(vj));
    if (pj.contains("sheet_offsets"))
      for (const json& oj : pj.at("sheet_offsets"))
        p.sheet_offsets.push_back(oj.get<int>());
    p.branch_sign = pj.value("branch_sign", 1);
    p.endpoint_a = pj.value("endpoint_a", -1);
    p.endpoint_b = pj.value("endpoint_b", -1);
    out.push_back(std::move(p));
  }
  return out;
}

StabilityDatum stability_from_json(const json& j) {
  StabilityDatum d;
  for (const json& lj : j.at("labels")) d.labels.push_back(lj.get<std::string>());
  for (const json& cj : j.at("charges"))
    d.charges.push_back(complex_from_json(cj));
  if (j.contains("phases")) {
    for (const json& pj : j.at("phases")) d.phases.push_back(pj.get<double>());
  } else {
    for (cplx z : d.charges) d.phases.push_back(normalize_charge(z).second);
  }
  if (j.contains("hom_degrees"))
    for (const json& hj : j.at("hom_degrees")) {
      if (!hj.is_array() || hj.size() != 3)
        throw std::invalid_argument("hom entry must be [from, to, degree]");
      d.hom_degrees.push_back(
          {hj[0].get<int>(), hj[1].get<int>(), hj[2].get<int>()});
    }
  if (d.charges.size() != d.labels.size() ||
      d.phases.size() != d.labels.size())
    throw std::invalid_argument("labels, charges and phases must align");
  return d;
}

json qstab_to_json(const QStabilityDatum& d) {
  json out;
  out["s"] = complex_to_json(d.s);
  out["labels"] = d.base.labels;
  out["charges"] = json::array();
  for (cplx z : d.base.charges) out["charges"].push_back(complex_to_json(z));
  out["phases"] = d.base.phases;
  out["induced_phases"] = d.induced_phases;
  out["support_constant"] = d.support_constant;
  out["gldim"] = gldim(d.base);
  out["specialized"] = json::array();
  for (cplx z : d.specialized) out["specialized"].push_back(complex_to_json(z));
  json homs = json::array();
  for (const HomEntry& h : d.base.hom_degrees)
    homs.push_back(json::array({h.from, h.to, h.degree}));
  out["hom_degrees"] = homs;
  return out;
}

json surface_analysis_to_json(const SurfaceAnalysis& a) {
  json out;
  out["violations"] = a.violations;
  out["num_polygons"] = a.num_polygons;
  out["num_arcs"] = a.num_arcs;
  if (a.violations.empty()) {
    json fans = json::array();
    for (const Fan& f : a.fans) {
      json fj;
      fj["arcs"] = f.arcs;
      fj["degrees"] = f.degrees;
      fans.push_back(fj);
    }
    out["fans"] = fans;
    out["k"] = a.k;
    out["l"] = a.l;
  }
  return out;
}

json strip_decomposition_to_json(const StripDecomposition& dec) {
  json out;
  out["saddle_free"] = dec.saddle_free;
  json seps = json::array();
  for (const Trajectory& t : dec.separatrices) {
    json tj;
    tj["source_zero"] = t.source_zero;
    tj["emission_angle"] = t.emission_angle;
    tj["termination"] = t.termination == Termination::hits_zero ? "hits_zero"
                        : t.termination == Termination::escapes_to_pole
                            ? "escapes_to_pole"
                        : t.termination == Termination::closed ? "closed"
                                                               : "length_budget";
    tj["hit_index"] = t.hit_index;
    tj["arc_length"] = t.arc_length;
    seps.push_back(tj);
  }
  out["separatrices"] = seps;
  json strips = json::array();
  for (const Strip& st : dec.strips) {
    json sj;
    sj["zero_a"] = st.zero_a;
    sj["zero_b"] = st.zero_b;
    sj["period"] = complex_to_json(st.period);
    sj["separatrices"] = st.separatrices;
    strips.push_back(sj);
  }
  out["strips"] = strips;
  json halves = json::array();
  for (const HalfPlane& hp : dec.half_planes) {
    json hj;
    hj["pole"] = hp.pole;
    hj["separatrices"] = hp.separatrices;
    halves.push_back(hj);
  }
  out["half_planes"] = halves;
  return out;
}

std::string foliation_svg(const QDifferential& q,
                          const StripDecomposition& dec) {
  double r = 1.0;
  for (cplx z : q.zeros) r = std::max(r, std::abs(z));
  for (const PoleSpec& p : q.cover.poles)
    if (!p.at_infinity) r = std::max(r, std::abs(p.z));
  double view = 2.6 * (1.0 + r);
  double scale = 500.0 / view;
  auto px = [&](cplx z) {
    std::ostringstream os;
    os << 250.0 + scale * z.real() << "," << 250.0 - scale * z.imag();
    return os.str();
  };
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"500\" "
         "height=\"500\" viewBox=\"0 0 500 500\">\n"
      << "<rect width=\"500\" height=\"500\" fill=\"white\"/>\n";
  for (const Trajectory& t : dec.separatrices) {
    svg << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1\" "
           "points=\"";
    for (cplx z : t.points)
      if (std::abs(z) < view) svg << px(z) << " ";
    svg << "\"/>\n";
  }
  for (const Strip& st : dec.strips) {
    svg << "<polyline fill=\"none\" stroke=\"red\" stroke-width=\"1.5\" "
           "points=\"";
    for (cplx z : st.connection.points)
      if (std::abs(z) < view) svg << px(z) << " ";
    svg << "\"/>\n";
  }
  for (cplx z : q.zeros)
    svg << "<circle cx=\"" << 250.0 + scale * z.real() << "\" cy=\""
        << 250.0 - scale * z.imag() << "\" r=\"4\" fill=\"green\"/>\n";
  for (const PoleSpec& p : q.cover.poles)
    if (!p.at_infinity)
      svg << "<rect x=\"" << 250.0 + scale * p.z.real() - 4 << "\" y=\""
          << 250.0 - scale * p.z.imag() - 4
          << "\" width=\"8\" height=\"8\" fill=\"blue\"/>\n";
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace qdl
