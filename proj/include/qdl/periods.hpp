#pragma once

#include <map>
#include <string>
#include <vector>

#include "qdl/hurwitz.hpp"
#include "qdl/surface.hpp"

namespace qdl {

// A path on the spectral cover: a base-plane polyline together with the deck
// bookkeeping. sheet_offsets holds one integer per vertex (empty means sheet
// zero everywhere); a jump between consecutive vertices adds 2 pi i to the
// continued log f at that vertex. branch_sign flips the square root globally.
// Endpoints may be declared as zero indices (-1 for a regular point); declared
// zero endpoints get the regularizing endpoint substitution.
struct SheetPath {
  std::vector<cplx> polyline;
  std::vector<int> sheet_offsets;
  int branch_sign = 1;
  int endpoint_a = -1;
  int endpoint_b = -1;
};

// Integral of sqrt(xi) along the path, with log f continued along the
// polyline and shifted by the sheet offsets. Throws when a declared zero
// endpoint is non-integrable (Re s <= 2) or does not match the polyline.
cplx period(const QDifferential& q, const SheetPath& path);

// Deck transformation: all sheet offsets incremented by m.
SheetPath q_shift(const SheetPath& path, int m = 1);

// Integer Laurent polynomial in q, exponent -> coefficient.
struct LaurentPoly {
  std::map<int, long long> c;
};

LaurentPoly laurent_monomial(int exponent, long long coefficient = 1);

// Evaluation at q = e^{i pi s}.
cplx laurent_eval(const LaurentPoly& p, cplx s);

// An element of the free module over Z[q^{+-1}] in a fixed basis.
using LaurentVector = std::vector<LaurentPoly>;

// Multiplication by q^m, componentwise.
LaurentVector q_act(const LaurentVector& v, int m = 1);

// Free module of rank n with saddle-connection basis labels. Elements are
// stored in the basis; q acts invertibly through q_act.
struct LaurentLattice {
  int rank = 0;
  std::vector<std::string> labels;
  std::vector<LaurentVector> vectors;
};

// Evaluates each Laurent coefficient at q = e^{i pi s} and contracts with
// the base charges of the basis.
cplx specialize_charge(const LaurentVector& v,
                       const std::vector<cplx>& base_charges, cplx s);

struct RankReport {
  int hat_rank = 0;
  int strip_count = 0;
  bool match = false;
  bool asserted = false;  // false when the decomposition was not saddle-free
  std::string message;
};

// Compares the strip count of a saddle-free decomposition against the rank
// of the hat homology group. A non-saddle-free input is reported but never
// counted as a mismatch.
RankReport lattice_rank_audit(const MarkedSurfaceData& surf, int strip_count,
                              bool saddle_free);

}  // namespace qdl
