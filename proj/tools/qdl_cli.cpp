#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "qdl/json_io.hpp"
#include "qdl/winding.hpp"

using namespace qdl;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitNumeric = 2;

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

void emit(const json& out, const std::string& json_path) {
  std::string text = out.dump(2);
  if (!json_path.empty()) {
    std::ofstream os(json_path);
    os << text << "\n";
  }
  std::cout << text << "\n";
}

int max_threads() {
  const char* env = std::getenv("QDIFF_LAB_THREADS");
  if (!env) return 4;
  int n = std::atoi(env);
  return n > 0 ? n : 1;
}

// Built-in arc systems for the corpus runner, matching the documented JSON
// conventions (boundary-first counterclockwise polygons).
PolygonSide boundary_side() {
  PolygonSide s;
  s.is_boundary = true;
  return s;
}

PolygonSide arc_side(int index, bool reversed) {
  PolygonSide s;
  s.arc.arc = index;
  s.arc.reversed = reversed;
  return s;
}

ArcSystem disk_fan(int m, const std::vector<int>& degrees) {
  ArcSystem sys;
  sys.num_arcs = m;
  sys.polygons.push_back({{boundary_side(), arc_side(0, true)}, {}});
  for (int i = 1; i < m; ++i)
    sys.polygons.push_back(
        {{boundary_side(), arc_side(i, true), arc_side(i - 1, false)},
         {degrees[i - 1]}});
  sys.polygons.push_back({{boundary_side(), arc_side(m - 1, false)}, {}});
  return sys;
}

int run_surface(const std::string& file, const std::string& json_out) {
  json j = read_json_file(file);
  ArcSystem sys = arc_system_from_json(j);
  int genus = genus_from_json(j);
  SurfaceAnalysis a = analyze_arc_system(sys, genus);
  json out = surface_analysis_to_json(a);
  if (a.violations.empty()) {
    MarkedSurfaceData surf = numerical_data(sys, genus);
    out["genus"] = surf.genus;
    out["hat_rank"] = hat_rank(surf);
  }
  emit(out, json_out);
  return a.violations.empty() ? kExitOk : kExitValidation;
}

int run_quiver(const std::string& file, const std::string& json_out) {
  json j = read_json_file(file);
  ArcSystem sys = arc_system_from_json(j);
  GradedQuiver q = extend_quiver(build_quiver(sys));
  Superpotential w = superpotential(sys, q);
  GinzburgDGA dga = ginzburg_differential(q, w);
  std::vector<std::string> residues = verify_d_squared(dga);
  json out;
  out["num_vertices"] = q.num_vertices;
  out["num_arrows"] = q.arrows.size();
  json arrows = json::array();
  for (const Arrow& a : q.arrows) {
    json aj;
    aj["name"] = a.name;
    aj["source"] = a.source;
    aj["target"] = a.target;
    aj["deg"] = json::array({a.deg1, a.deg2});
    arrows.push_back(aj);
  }
  out["arrows"] = arrows;
  out["potential_terms"] = w.terms.size();
  out["d_squared_residues"] = residues;
  emit(out, json_out);
  return residues.empty() ? kExitOk : kExitValidation;
}

int run_hurwitz(const std::string& file, const std::string& json_out) {
  QDifferential q = qdiff_from_json(read_json_file(file));
  ZeroCountReport zc = zero_count_check(q);
  json out = qdiff_to_json(q);
  out["zero_count"] = zc.count;
  out["zero_count_expected"] = zc.expected;
  out["zero_count_ok"] = zc.ok;
  std::vector<int> k;
  for (const PoleSpec& p : q.cover.poles) k.push_back(p.k);
  out["hurwitz_dimension"] = hurwitz_dimension(0, k);
  emit(out, json_out);
  return zc.ok ? kExitOk : kExitValidation;
}

int run_foliate(const std::string& file, double phase, double tol,
                double budget, const std::string& svg_out,
                const std::string& json_out) {
  QDifferential q = qdiff_from_json(read_json_file(file));
  TraceOptions opt;
  opt.ode_tol = tol;
  opt.length_budget = budget;
  StripDecomposition dec = strip_decomposition(q, phase, opt);
  json out = strip_decomposition_to_json(dec);
  out["phase"] = phase;
  if (!svg_out.empty()) {
    std::ofstream os(svg_out);
    os << foliation_svg(q, dec);
  }
  emit(out, json_out);
  return kExitOk;
}

int run_wind(const std::string& file, std::vector<double> center, double radius,
             const std::string& json_out) {
  QDifferential q = qdiff_from_json(read_json_file(file));
  cplx c(center.size() > 0 ? center[0] : 0.0,
         center.size() > 1 ? center[1] : 0.0);
  auto coeff = [&](cplx z) { return coefficient(q, z); };
  double w = angle_change_numeric(coeff, circle_loop(c, radius)) / M_PI;
  json out;
  out["center"] = complex_to_json(c);
  out["radius"] = radius;
  out["winding"] = w;
  emit(out, json_out);
  return kExitOk;
}

int run_periods(const std::string& file, const std::string& paths_file,
                const std::string& json_out) {
  QDifferential q = qdiff_from_json(read_json_file(file));
  std::vector<SheetPath> paths = sheet_paths_from_json(read_json_file(paths_file));
  json out;
  json values = json::array();
  json residuals = json::array();
  cplx factor = std::exp(cplx(0.0, 1.0) * M_PI * q.s);
  for (const SheetPath& p : paths) {
    cplx z = period(q, p);
    values.push_back(complex_to_json(z));
    cplx shifted = period(q, q_shift(p));
    double res = std::abs(shifted - factor * z) / (1.0 + std::abs(z));
    residuals.push_back(res);
  }
  out["periods"] = values;
  out["equivariance_residuals"] = residuals;
  emit(out, json_out);
  return kExitOk;
}

int run_cut(const std::string& file, const std::string& json_out) {
  CutGraph g = cut_graph_from_json(read_json_file(file));
  json out;
  out["violations"] = validate_cut_graph(g);
  MatchingResult r = find_matching(g);
  out["matching"] = matching_to_json(r);
  out["flow_agrees"] = flow_matching(g).feasible == r.feasible;
  emit(out, json_out);
  return r.feasible ? kExitOk : kExitValidation;
}

int run_induce(const std::string& file, std::vector<double> s_parts,
               const std::string& mode, const std::string& json_out) {
  StabilityDatum d = stability_from_json(read_json_file(file));
  cplx s(s_parts.size() > 0 ? s_parts[0] : 3.0,
         s_parts.size() > 1 ? s_parts[1] : 0.0);
  InduceMode m;
  if (mode == "open")
    m = InduceMode::open;
  else if (mode == "closed")
    m = InduceMode::closed;
  else
    throw std::invalid_argument("mode must be open or closed");
  QStabilityDatum qd = induce(d, s, m);
  json out = qstab_to_json(qd);
  out["mode"] = mode;
  int minimal = 0;
  while (!xhom_bounded_check(qd, minimal) && minimal < 64) ++minimal;
  out["xhom_minimal_bound"] = minimal;
  emit(out, json_out);
  return kExitOk;
}

struct SuiteCase {
  std::string name;
  double residual = 0.0;
  bool ok = false;
};

std::vector<SuiteCase> winding_suite() {
  std::vector<SuiteCase> cases;
  cplx s(3.7, 0.0);
  double w1 = winding_number(dlog_power(0.0, s - 2.0), circle_loop(0.0, 1.0));
  cases.push_back({"s_simple_zero", std::abs(w1 - 3.7), std::abs(w1 - 3.7) < 1e-6});
  int k = 2, l = 3;
  cplx ex = -(double(k) * (s - 2.0) + double(l));
  double w2 = winding_number(dlog_power(0.0, ex), circle_loop(0.0, 1.0));
  double want2 = -double(k) * (s.real() - 2.0) - l + 2.0;
  cases.push_back({"s_pole_k2_l3", std::abs(w2 - want2), std::abs(w2 - want2) < 1e-6});
  double w3 = winding_number(dlog_exp_type(0.0, 2, 3), circle_loop(0.0, 1.0));
  cases.push_back({"exp_type_k2_l3", std::abs(w3 + 1.0), std::abs(w3 + 1.0) < 1e-6});
  return cases;
}

std::vector<SuiteCase> quiver_suite() {
  std::vector<SuiteCase> cases;
  std::vector<std::pair<std::string, ArcSystem>> systems = {
      {"a2_fan", disk_fan(2, {-1})},
      {"a3_fan", disk_fan(3, {0, 0})},
      {"a4_fan", disk_fan(4, {0, 0, 1})},
  };
  for (auto& [name, sys] : systems) {
    GradedQuiver q = extend_quiver(build_quiver(sys));
    Superpotential w = superpotential(sys, q);
    GinzburgDGA dga = ginzburg_differential(q, w);
    size_t res = verify_d_squared(dga).size();
    cases.push_back({name + "_d_squared", double(res), res == 0});
  }
  return cases;
}

std::vector<SuiteCase> foliate_suite() {
  std::vector<SuiteCase> cases;
  QDifferential q = make_qdiff(type_a_cover({cplx(-3.0), cplx(0.0)}), {4}, 3.0,
                               QFlavor::plain);
  StripDecomposition dec = strip_decomposition(q, 0.3);
  bool counts = dec.strips.size() == 2 && dec.half_planes.size() == 5;
  cases.push_back({"a2_strip_counts",
                   double(dec.strips.size()) - 2.0 +
                       (double(dec.half_planes.size()) - 5.0),
                   counts});
  if (dec.strips.size() == 2) {
    double d = std::abs(std::abs(dec.strips[0].period) -
                        std::abs(dec.strips[1].period));
    cases.push_back({"a2_period_symmetry", d, d < 1e-5});
  }
  return cases;
}

int run_corpus(const std::string& suite) {
  std::vector<std::pair<std::string, std::vector<SuiteCase> (*)()>> suites = {
      {"winding", winding_suite},
      {"quiver", quiver_suite},
      {"foliate", foliate_suite},
  };
  std::vector<std::pair<std::string, std::future<std::vector<SuiteCase>>>> jobs;
  int cap = max_threads();
  for (auto& [name, fn] : suites) {
    if (!suite.empty() && suite != name) continue;
    jobs.push_back({name, std::async(cap > 1 ? std::launch::async
                                             : std::launch::deferred,
                                     fn)});
  }
  if (jobs.empty()) {
    std::cerr << "unknown suite: " << suite << "\n";
    return kExitValidation;
  }
  bool all_ok = true;
  std::cout << "suite          case                    residual      status\n";
  for (auto& [name, fut] : jobs) {
    for (const SuiteCase& c : fut.get()) {
      std::ostringstream line;
      line.setf(std::ios::scientific);
      line.precision(3);
      line << name;
      line << std::string(name.size() < 15 ? 15 - name.size() : 1, ' ');
      line << c.name
           << std::string(c.name.size() < 24 ? 24 - c.name.size() : 1, ' ');
      line << c.residual << "  " << (c.ok ? "pass" : "FAIL");
      std::cout << line.str() << "\n";
      all_ok = all_ok && c.ok;
    }
  }
  return all_ok ? kExitOk : kExitNumeric;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"q-quadratic differential laboratory"};
  app.require_subcommand(1);

  std::string in_file, paths_file, json_out, svg_out, mode = "open",
                                                     suite;
  double phase = 0.0, tol = 1e-9, budget = 400.0, radius = 1.0;
  std::vector<double> center{0.0, 0.0}, s_parts{3.0, 0.0};
  unsigned seed = 0;

  CLI::App* c_surface = app.add_subcommand("surface", "analyze an arc system");
  c_surface->add_option("file", in_file)->required();
  c_surface->add_option("--json", json_out);

  CLI::App* c_quiver =
      app.add_subcommand("quiver", "graded quiver, potential, differential");
  c_quiver->add_option("file", in_file)->required();
  c_quiver->add_option("--json", json_out);

  CLI::App* c_hurwitz = app.add_subcommand("hurwitz", "validate a cover file");
  c_hurwitz->add_option("file", in_file)->required();
  c_hurwitz->add_option("--json", json_out);

  CLI::App* c_foliate =
      app.add_subcommand("foliate", "strip decomposition at a phase");
  c_foliate->add_option("file", in_file)->required();
  c_foliate->add_option("--phase", phase);
  c_foliate->add_option("--tol", tol);
  c_foliate->add_option("--budget", budget);
  c_foliate->add_option("--svg", svg_out);
  c_foliate->add_option("--json", json_out);

  CLI::App* c_wind = app.add_subcommand("wind", "winding number on a circle");
  c_wind->add_option("file", in_file)->required();
  c_wind->add_option("--center", center)->expected(2);
  c_wind->add_option("--radius", radius);
  c_wind->add_option("--json", json_out);

  CLI::App* c_periods = app.add_subcommand("periods", "sheet path periods");
  c_periods->add_option("file", in_file)->required();
  c_periods->add_option("--paths", paths_file)->required();
  c_periods->add_option("--json", json_out);

  CLI::App* c_cut = app.add_subcommand("cut", "bipartite cut matching");
  c_cut->add_option("file", in_file)->required();
  c_cut->add_option("--json", json_out);

  CLI::App* c_induce =
      app.add_subcommand("induce", "induced q-stability datum");
  c_induce->add_option("file", in_file)->required();
  c_induce->add_option("--s", s_parts)->expected(1, 2);
  c_induce->add_option("--mode", mode)->check(CLI::IsMember({"open", "closed"}));
  c_induce->add_option("--json", json_out);

  CLI::App* c_corpus = app.add_subcommand("corpus", "built-in check suites");
  c_corpus->add_option("--suite", suite);
  c_corpus->add_option("--seed", seed);

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_surface->parsed()) return run_surface(in_file, json_out);
    if (c_quiver->parsed()) return run_quiver(in_file, json_out);
    if (c_hurwitz->parsed()) return run_hurwitz(in_file, json_out);
    if (c_foliate->parsed())
      return run_foliate(in_file, phase, tol, budget, svg_out, json_out);
    if (c_wind->parsed()) return run_wind(in_file, center, radius, json_out);
    if (c_periods->parsed()) return run_periods(in_file, paths_file, json_out);
    if (c_cut->parsed()) return run_cut(in_file, json_out);
    if (c_induce->parsed()) return run_induce(in_file, s_parts, mode, json_out);
    if (c_corpus->parsed()) return run_corpus(suite);
  } catch (const std::invalid_argument& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::runtime_error& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitValidation;
}
