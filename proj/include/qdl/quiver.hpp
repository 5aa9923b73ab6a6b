#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qdl/surface.hpp"

namespace qdl {

enum class ArrowKind { original, dual, loop };

struct Arrow {
  int source = -1;
  int target = -1;
  int deg1 = 0;  // first degree
  int deg2 = 0;  // X-degree
  ArrowKind kind = ArrowKind::original;
  int pair = -1;  // dual partner index for originals/duals, -1 for loops
  // Provenance of originals: fan index and the two positions inside it.
  int fan = -1, fi = -1, fj = -1;
  std::string name;
};

struct GradedQuiver {
  int num_vertices = 0;
  std::vector<Arrow> arrows;
  bool extended = false;
  // Quadratic relations among consecutive-angle arrows: composable pairs
  // whose shared vertex comes from two different marked points.
  std::vector<std::pair<int, int>> relations;
};

// A path is a composable sequence of arrow indices, read left to right.
using Path = std::vector<int>;
using PathSum = std::map<Path, long long>;

struct CyclicWord {
  Path word;
  long long coeff = 1;
};

struct Superpotential {
  std::vector<CyclicWord> terms;
};

struct GinzburgDGA {
  GradedQuiver quiver;
  Superpotential potential;
  std::vector<PathSum> differential;  // indexed by arrow
  int truncation_length = 6;
};

// One vertex per arc; per fan an arrow a_ij for each i < j with
// deg a_ij = 1 - d_ij, d_ij the sum of consecutive angle degrees.
GradedQuiver build_quiver(const ArcSystem& sys);

// Adds the dual of each original (bidegree (2,-1) - (deg a, 0)) and one loop
// of bidegree (1,-1) per vertex.
GradedQuiver extend_quiver(const GradedQuiver& q);

// W = sum over fans of sum_{i<j<k} a_ij a_jk a*_ki, expressed in the arrow
// indices of the extended quiver built from the same system.
Superpotential superpotential(const ArcSystem& sys, const GradedQuiver& extended);

// d a = cyclic derivative of W with respect to the paired arrow; on the loop
// at v, d is the vertex truncation of sum_a [a, a*]. Signs follow the Koszul
// rule on the grading used for parity. Throws on any (+1, 0) bidegree-shift
// violation.
GinzburgDGA ginzburg_differential(const GradedQuiver& extended,
                                  const Superpotential& w,
                                  int truncation_length = 6);

// Applies d twice through Leibniz on every generator; returns a description
// of each nonzero residue (empty = d^2 vanishes up to the truncation length).
std::vector<std::string> verify_d_squared(const GinzburgDGA& dga);

// Collapses bidegree (a, b) to a + b*N and re-derives the differential from
// the stored superpotential in the collapsed grading (for odd N the Koszul
// parities of duals and loops change, so the signs must be recomputed).
GinzburgDGA n_reduce(const GinzburgDGA& dga, int n);

std::pair<int, int> path_bidegree(const GradedQuiver& q, const Path& p);

// Lexicographically minimal rotation with the Koszul sign picked up from the
// rotated-off prefix; used as the cyclic-word normal form.
CyclicWord normalize_cyclic(const GradedQuiver& q, const CyclicWord& w);

std::string format_path_sum(const GradedQuiver& q, const PathSum& s);

}  // namespace qdl
