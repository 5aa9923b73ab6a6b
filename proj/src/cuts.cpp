#include "qdl/cuts.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

namespace qdl {

std::vector<std::string> validate_cut_graph(const CutGraph& g) {
  std::vector<std::string> out;
  int nb = static_cast<int>(g.demands.size());
  std::vector<int> wdeg(g.num_whites, 0), bdeg(nb, 0);
  for (auto [w, b] : g.edges) {
    if (w < 0 || w >= g.num_whites || b < 0 || b >= nb) {
      out.push_back("edge endpoint out of range");
      return out;
    }
    ++wdeg[w];
    ++bdeg[b];
  }
  for (int w = 0; w < g.num_whites; ++w)
    if (wdeg[w] < 1)
      out.push_back("white vertex " + std::to_string(w) + " has valence 0");
  for (int b = 0; b < nb; ++b)
    if (bdeg[b] < g.demands[b])
      out.push_back("black vertex " + std::to_string(b) +
                    " has valence below its demand");
  int total = std::accumulate(g.demands.begin(), g.demands.end(), 0);
  if (total != g.num_whites)
    out.push_back("demands sum to " + std::to_string(total) + " but there are " +
                  std::to_string(g.num_whites) + " whites");
  return out;
}

bool gate_condition(cplx s, const std::vector<int>& k,
                    const std::vector<int>& l) {
  double threshold = -1e300;
  for (size_t i = 0; i < k.size(); ++i)
    threshold = std::max(threshold, double(k[i] + 3 - l[i]));
  return s.real() >= threshold;
}

namespace {

MatchingResult induction_matching(const CutGraph& g) {
  MatchingResult r;
  int nb = static_cast<int>(g.demands.size());
  int ne = static_cast<int>(g.edges.size());
  int total = std::accumulate(g.demands.begin(), g.demands.end(), 0);
  if (total != g.num_whites) {
    r.message = "infeasible: demand total does not match the white count";
    return r;
  }

  std::vector<char> alive(ne, 1), chosen(ne, 0), removed(g.num_whites, 0);
  std::vector<int> wdeg(g.num_whites, 0), bdeg(nb, 0);
  std::vector<int> demand = g.demands;
  for (auto [w, b] : g.edges) {
    ++wdeg[w];
    ++bdeg[b];
  }
  for (int w = 0; w < g.num_whites; ++w)
    if (wdeg[w] == 0) {
      r.message = "infeasible: white vertex with no edges";
      return r;
    }

  int remaining = g.num_whites;
  while (remaining > 0) {
    // Forced move: the unique edge of a valence-1 white.
    int fw = -1;
    for (int w = 0; w < g.num_whites && fw < 0; ++w)
      if (!removed[w] && wdeg[w] == 1) fw = w;
    if (fw >= 0) {
      int fe = -1;
      for (int e = 0; e < ne && fe < 0; ++e)
        if (alive[e] && g.edges[e].first == fw) fe = e;
      int b = g.edges[fe].second;
      chosen[fe] = 1;
      alive[fe] = 0;
      removed[fw] = 1;
      wdeg[fw] = 0;
      --bdeg[b];
      if (--demand[b] < 0) {
        r.message = "infeasible: black vertex over-saturated by forced edges";
        return r;
      }
      --remaining;
      continue;
    }
    // Otherwise delete a surplus edge: lowest-index black whose remaining
    // valence exceeds its remaining demand, then its lowest-index edge.
    int de = -1;
    for (int b = 0; b < nb && de < 0; ++b) {
      if (bdeg[b] <= demand[b]) continue;
      for (int e = 0; e < ne && de < 0; ++e)
        if (alive[e] && g.edges[e].second == b) de = e;
    }
    if (de < 0) {
      r.message = "infeasible: no forced white and no surplus black";
      return r;
    }
    alive[de] = 0;
    --wdeg[g.edges[de].first];
    --bdeg[g.edges[de].second];
    if (wdeg[g.edges[de].first] == 0) {
      r.message = "infeasible: white vertex lost its last edge";
      return r;
    }
  }
  for (int b = 0; b < nb; ++b)
    if (demand[b] != 0) {
      r.message = "infeasible: unmet demand at a black vertex";
      return r;
    }
  for (int e = 0; e < ne; ++e)
    if (chosen[e]) r.edges.push_back(e);
  r.feasible = true;
  r.message = "matching found";
  return r;
}

// Small dense max-flow (Edmonds-Karp) on the unit-capacity white side.
struct FlowNet {
  int n;
  std::vector<std::vector<int>> cap;
  explicit FlowNet(int nodes) : n(nodes), cap(nodes, std::vector<int>(nodes, 0)) {}
  int augment(int s, int t) {
    std::vector<int> parent(n, -1);
    parent[s] = s;
    std::queue<int> q;
    q.push(s);
    while (!q.empty() && parent[t] < 0) {
      int u = q.front();
      q.pop();
      for (int v = 0; v < n; ++v)
        if (parent[v] < 0 && cap[u][v] > 0) {
          parent[v] = u;
          q.push(v);
        }
    }
    if (parent[t] < 0) return 0;
    for (int v = t; v != s; v = parent[v]) {
      cap[parent[v]][v] -= 1;
      cap[v][parent[v]] += 1;
    }
    return 1;
  }
};

}  // namespace

MatchingResult flow_matching(const CutGraph& g) {
  MatchingResult r;
  int nb = static_cast<int>(g.demands.size());
  int total = std::accumulate(g.demands.begin(), g.demands.end(), 0);
  if (total != g.num_whites) {
    r.message = "infeasible: demand total does not match the white count";
    return r;
  }
  // Nodes: source, whites, blacks, sink.
  int src = 0, sink = 1 + g.num_whites + nb;
  FlowNet net(sink + 1);
  for (int w = 0; w < g.num_whites; ++w) net.cap[src][1 + w] = 1;
  for (int b = 0; b < nb; ++b)
    net.cap[1 + g.num_whites + b][sink] = g.demands[b];
  for (auto [w, b] : g.edges) net.cap[1 + w][1 + g.num_whites + b] += 1;
  int flow = 0;
  while (net.augment(src, sink)) ++flow;
  if (flow != g.num_whites) {
    r.message = "infeasible: max flow below the white count";
    return r;
  }
  // Used units on a white->black arc sit in the reversed residual capacity;
  // distribute them over the (possibly parallel) edges in index order.
  for (size_t e = 0; e < g.edges.size(); ++e) {
    auto [w, b] = g.edges[e];
    if (net.cap[1 + g.num_whites + b][1 + w] > 0) {
      r.edges.push_back(static_cast<int>(e));
      net.cap[1 + g.num_whites + b][1 + w] -= 1;
    }
  }
  r.feasible = true;
  r.message = "matching found";
  return r;
}

MatchingResult find_matching(const CutGraph& g) {
  MatchingResult ind = induction_matching(g);
  if (ind.feasible) return ind;
  // The greedy surplus deletion can dead-end on graphs whose feasibility is
  // not guaranteed by the valence invariants alone; fall back to max flow
  // before certifying infeasibility.
  MatchingResult flow = flow_matching(g);
  if (flow.feasible) {
    flow.message = "matching found by the max-flow fallback";
    return flow;
  }
  return ind;
}

}  // namespace qdl
