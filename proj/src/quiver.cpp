#include "qdl/quiver.hpp"

#include <stdexcept>
#include <tuple>

namespace qdl {

namespace {

int parity(int n) { return ((n % 2) + 2) % 2; }

int arrow_parity(const GradedQuiver& q, int arrow) {
  return parity(q.arrows[arrow].deg1);
}

int path_parity(const GradedQuiver& q, const Path& p, size_t begin, size_t end) {
  int s = 0;
  for (size_t i = begin; i < end; ++i) s += arrow_parity(q, p[i]);
  return parity(s);
}

void check_composable(const GradedQuiver& q, const Path& p) {
  for (size_t i = 0; i + 1 < p.size(); ++i)
    if (q.arrows[p[i]].target != q.arrows[p[i + 1]].source)
      throw std::logic_error("non-composable path generated");
}

// Cyclic derivative with respect to arrow x: each occurrence is dropped and
// the word closed up cyclically, signed by the degree of the first remaining
// letter, as in d(abc) = (-1)^{deg a}ab + (-1)^{deg b}bc + (-1)^{deg c}ca.
PathSum cyclic_derivative(const GradedQuiver& q,
                          const std::vector<CyclicWord>& terms, int x) {
  PathSum out;
  for (const CyclicWord& t : terms) {
    const Path& w = t.word;
    for (size_t p = 0; p < w.size(); ++p) {
      if (w[p] != x) continue;
      Path rest;
      rest.insert(rest.end(), w.begin() + p + 1, w.end());
      rest.insert(rest.end(), w.begin(), w.begin() + p);
      check_composable(q, rest);
      long long sign =
          rest.empty() || !arrow_parity(q, rest.front()) ? 1 : -1;
      out[rest] += sign * t.coeff;
      if (out[rest] == 0) out.erase(rest);
    }
  }
  return out;
}

std::vector<PathSum> derive_differential(const GradedQuiver& q,
                                         const Superpotential& w) {
  std::vector<PathSum> d(q.arrows.size());
  std::vector<int> loop_at(q.num_vertices, -1);
  for (size_t i = 0; i < q.arrows.size(); ++i)
    if (q.arrows[i].kind == ArrowKind::loop)
      loop_at[q.arrows[i].source] = static_cast<int>(i);

  for (size_t i = 0; i < q.arrows.size(); ++i) {
    const Arrow& a = q.arrows[i];
    if (a.kind == ArrowKind::loop) continue;
    d[i] = cyclic_derivative(q, w.terms, a.pair);
  }
  // d(gamma*_v) is the vertex truncation of sum_a [a, a*] over originals,
  // [a, a*] = (-1)^{deg a} a a* + (-1)^{deg a*} a* a.
  for (size_t i = 0; i < q.arrows.size(); ++i) {
    const Arrow& a = q.arrows[i];
    if (a.kind != ArrowKind::original) continue;
    int ap = a.pair;
    Path aa = {static_cast<int>(i), ap};
    Path rev = {ap, static_cast<int>(i)};
    PathSum& ds = d[loop_at[a.source]];
    ds[aa] += arrow_parity(q, static_cast<int>(i)) ? -1 : 1;
    if (ds[aa] == 0) ds.erase(aa);
    PathSum& dt = d[loop_at[a.target]];
    dt[rev] += arrow_parity(q, ap) ? -1 : 1;
    if (dt[rev] == 0) dt.erase(rev);
  }

  for (size_t i = 0; i < q.arrows.size(); ++i) {
    const Arrow& a = q.arrows[i];
    for (const auto& [w_path, c] : d[i]) {
      (void)c;
      auto [d1, d2] = path_bidegree(q, w_path);
      if (d1 != a.deg1 + 1 || d2 != a.deg2)
        throw std::runtime_error("differential of " + a.name +
                                 " violates the (+1, 0) bidegree shift");
      if (!w_path.empty() && (q.arrows[w_path.front()].source != a.source ||
                              q.arrows[w_path.back()].target != a.target))
        throw std::logic_error("differential endpoints mismatch");
    }
  }
  return d;
}

// Leibniz expansion of d on a path, dropping words beyond the truncation.
PathSum d_of_path(const GradedQuiver& q, const std::vector<PathSum>& d,
                  const Path& p, int truncation) {
  PathSum out;
  for (size_t i = 0; i < p.size(); ++i) {
    long long pre_sign = path_parity(q, p, 0, i) ? -1 : 1;
    for (const auto& [w, c] : d[p[i]]) {
      Path combined;
      combined.insert(combined.end(), p.begin(), p.begin() + i);
      combined.insert(combined.end(), w.begin(), w.end());
      combined.insert(combined.end(), p.begin() + i + 1, p.end());
      if (static_cast<int>(combined.size()) > truncation) continue;
      check_composable(q, combined);
      out[combined] += pre_sign * c;
      if (out[combined] == 0) out.erase(combined);
    }
  }
  return out;
}

}  // namespace

GradedQuiver build_quiver(const ArcSystem& sys) {
  std::vector<Fan> fans = arc_fans(sys);
  GradedQuiver q;
  q.num_vertices = sys.num_arcs;
  for (size_t f = 0; f < fans.size(); ++f) {
    const Fan& fan = fans[f];
    int m = static_cast<int>(fan.arcs.size());
    for (int i = 0; i < m; ++i) {
      int d_ij = 0;
      for (int j = i + 1; j < m; ++j) {
        d_ij += fan.degrees[j - 1];
        Arrow a;
        a.source = fan.arcs[i];
        a.target = fan.arcs[j];
        a.deg1 = 1 - d_ij;
        a.deg2 = 0;
        a.kind = ArrowKind::original;
        a.fan = static_cast<int>(f);
        a.fi = i;
        a.fj = j;
        a.name = "a" + std::to_string(f) + ":" + std::to_string(i) + "-" +
                 std::to_string(j);
        q.arrows.push_back(a);
      }
    }
  }
  // Quadratic relations: composable consecutive-angle arrows whose shared
  // vertex comes from two different marked points.
  for (size_t x = 0; x < q.arrows.size(); ++x) {
    const Arrow& ax = q.arrows[x];
    if (ax.fj != ax.fi + 1) continue;
    for (size_t y = 0; y < q.arrows.size(); ++y) {
      const Arrow& ay = q.arrows[y];
      if (ay.fj != ay.fi + 1) continue;
      if (ax.fan == ay.fan) continue;
      if (ax.target != ay.source) continue;
      q.relations.emplace_back(static_cast<int>(x), static_cast<int>(y));
    }
  }
  return q;
}

GradedQuiver extend_quiver(const GradedQuiver& q) {
  if (q.extended) throw std::runtime_error("quiver already extended");
  GradedQuiver out = q;
  out.extended = true;
  size_t n_orig = q.arrows.size();
  for (size_t i = 0; i < n_orig; ++i) {
    const Arrow& a = q.arrows[i];
    Arrow dual;
    dual.source = a.target;
    dual.target = a.source;
    dual.deg1 = 2 - a.deg1;
    dual.deg2 = -1;
    dual.kind = ArrowKind::dual;
    dual.pair = static_cast<int>(i);
    dual.name = a.name + "*";
    out.arrows[i].pair = static_cast<int>(out.arrows.size());
    out.arrows.push_back(dual);
  }
  for (int v = 0; v < q.num_vertices; ++v) {
    Arrow loop;
    loop.source = v;
    loop.target = v;
    loop.deg1 = 1;
    loop.deg2 = -1;
    loop.kind = ArrowKind::loop;
    loop.name = "l" + std::to_string(v);
    out.arrows.push_back(loop);
  }
  return out;
}

Superpotential superpotential(const ArcSystem& sys,
                              const GradedQuiver& extended) {
  if (!extended.extended)
    throw std::runtime_error("superpotential needs the extended quiver");
  std::vector<Fan> fans = arc_fans(sys);
  // Locate originals by (fan, fi, fj).
  std::map<std::tuple<int, int, int>, int> index;
  for (size_t i = 0; i < extended.arrows.size(); ++i) {
    const Arrow& a = extended.arrows[i];
    if (a.kind == ArrowKind::original)
      index[{a.fan, a.fi, a.fj}] = static_cast<int>(i);
  }
  Superpotential w;
  for (size_t f = 0; f < fans.size(); ++f) {
    int m = static_cast<int>(fans[f].arcs.size());
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j)
        for (int k = j + 1; k < m; ++k) {
          int fi = static_cast<int>(f);
          CyclicWord t;
          t.word = {index.at({fi, i, j}), index.at({fi, j, k}),
                    extended.arrows[index.at({fi, i, k})].pair};
          t.coeff = 1;
          w.terms.push_back(t);
        }
  }
  for (const CyclicWord& t : w.terms) {
    auto [d1, d2] = path_bidegree(extended, t.word);
    if (d1 != 3 || d2 != -1)
      throw std::runtime_error("superpotential term not of bidegree (3,-1)");
  }
  return w;
}

GinzburgDGA ginzburg_differential(const GradedQuiver& extended,
                                  const Superpotential& w,
                                  int truncation_length) {
  if (!extended.extended)
    throw std::runtime_error("ginzburg_differential needs the extended quiver");
  GinzburgDGA dga;
  dga.quiver = extended;
  dga.potential = w;
  dga.truncation_length = truncation_length;
  dga.differential = derive_differential(extended, w);
  return dga;
}

std::vector<std::string> verify_d_squared(const GinzburgDGA& dga) {
  std::vector<std::string> report;
  for (size_t g = 0; g < dga.quiver.arrows.size(); ++g) {
    PathSum residue;
    for (const auto& [w, c] : dga.differential[g]) {
      PathSum dd = d_of_path(dga.quiver, dga.differential, w,
                             dga.truncation_length);
      for (const auto& [v, cv] : dd) {
        residue[v] += c * cv;
        if (residue[v] == 0) residue.erase(v);
      }
    }
    if (!residue.empty())
      report.push_back("d^2(" + dga.quiver.arrows[g].name +
                       ") = " + format_path_sum(dga.quiver, residue));
  }
  return report;
}

GinzburgDGA n_reduce(const GinzburgDGA& dga, int n) {
  if (n < 2) throw std::runtime_error("n_reduce requires N >= 2");
  GinzburgDGA out;
  out.quiver = dga.quiver;
  for (Arrow& a : out.quiver.arrows) {
    a.deg1 = a.deg1 + n * a.deg2;
    a.deg2 = 0;
  }
  out.potential = dga.potential;
  out.truncation_length = dga.truncation_length;
  out.differential = derive_differential(out.quiver, out.potential);
  return out;
}

std::pair<int, int> path_bidegree(const GradedQuiver& q, const Path& p) {
  int d1 = 0, d2 = 0;
  for (int a : p) {
    d1 += q.arrows[a].deg1;
    d2 += q.arrows[a].deg2;
  }
  return {d1, d2};
}

CyclicWord normalize_cyclic(const GradedQuiver& q, const CyclicWord& w) {
  CyclicWord best = w;
  CyclicWord cur = w;
  for (size_t r = 1; r < w.word.size(); ++r) {
    // Rotate left by one, carrying the Koszul sign of the moved letter.
    int head = cur.word.front();
    int rest = path_parity(q, cur.word, 1, cur.word.size());
    long long sign = (arrow_parity(q, head) * rest) % 2 ? -1 : 1;
    cur.word.erase(cur.word.begin());
    cur.word.push_back(head);
    cur.coeff *= sign;
    if (cur.word < best.word) best = cur;
  }
  return best;
}

std::string format_path_sum(const GradedQuiver& q, const PathSum& s) {
  if (s.empty()) return "0";
  std::string out;
  for (const auto& [p, c] : s) {
    if (!out.empty() || c < 0) out += c < 0 ? " - " : " + ";
    long long mag = c < 0 ? -c : c;
    if (mag != 1) out += std::to_string(mag) + "*";
    for (size_t i = 0; i < p.size(); ++i) {
      if (i) out += ".";
      out += q.arrows[p[i]].name;
    }
  }
  return out;
}

}  // namespace qdl
