#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qdl/poly.hpp"

namespace qdl {

// Bipartite graph of the cut construction: white vertices are the s-simple
// zeros, black vertices are the boundary/pole components with demands k_i,
// and an edge records that a zero is adjacent to the annulus of a component.
struct CutGraph {
  int num_whites = 0;
  std::vector<int> demands;                // one per black vertex
  std::vector<std::pair<int, int>> edges;  // (white index, black index)
};

// Invariant check: every white vertex has valence >= 1, every black vertex
// has valence >= its demand, and the demands sum to the number of whites.
std::vector<std::string> validate_cut_graph(const CutGraph& g);

// Sufficient condition gate: Re(s) >= max_i(k_i + 3 - l_i).
bool gate_condition(cplx s, const std::vector<int>& k,
                    const std::vector<int>& l);

struct MatchingResult {
  bool feasible = false;
  std::vector<int> edges;  // selected edge indices, sorted
  std::string message;
};

// Demand matching by induction: repeatedly take the forced edge of a
// valence-1 white, otherwise delete the lowest-index edge at the
// lowest-index over-saturated black. Deterministic; returns an
// infeasibility certificate when the graph invariants fail.
MatchingResult find_matching(const CutGraph& g);

// Independent max-flow computation of the same matching problem.
MatchingResult flow_matching(const CutGraph& g);

}  // namespace qdl
