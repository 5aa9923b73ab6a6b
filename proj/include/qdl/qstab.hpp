#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qdl/flatgeo.hpp"
#include "qdl/periods.hpp"

namespace qdl {

// A recorded nonvanishing Hom from object `from` to object `to` in the
// given shift degree.
struct HomEntry {
  int from = 0;
  int to = 0;
  int degree = 0;
};

// Numerical shadow of a stability condition: labeled objects with central
// charges, phase representatives, and the finite table of known Homs.
struct StabilityDatum {
  std::vector<std::string> labels;
  std::vector<cplx> charges;
  std::vector<double> phases;  // Z = m e^{i pi phi}, m > 0, phi in (0, 1]
  std::vector<HomEntry> hom_degrees;
};

// Chooses the sign of z so its phase representative lies in (0, 1] and
// returns (signed charge, phase).
std::pair<cplx, double> normalize_charge(cplx z);

// One object per strip; Z is the strip period. Hom degrees: identity in
// degree 0 for every object, and a degree-1 entry for each ordered pair of
// strips sharing a boundary zero. Throws on non-saddle-free input.
StabilityDatum from_strips(const StripDecomposition& dec,
                           const QDifferential& q);

// sup{(phi_to + degree) - phi_from} over the recorded table; -infinity on
// an empty table.
double gldim(const StabilityDatum& d);

enum class InduceMode { open, closed };

struct QStabilityDatum {
  StabilityDatum base;
  cplx s = 3.0;
  std::vector<double> induced_phases;  // sorted union of Re(s)-translates
  double support_constant = 0.0;
  LaurentLattice lattice;              // strip basis, unit Laurent vectors
  std::vector<cplx> specialized;       // charges after q = e^{i pi s}
};

// Gate: open mode needs gldim + 1 < Re(s), closed mode gldim + 1 <= Re(s);
// throws when violated. Induced phases run over k in [k_min, k_max].
QStabilityDatum induce(const StabilityDatum& d, cplx s, InduceMode mode,
                       int k_min = -1, int k_max = 1);

// True when no recorded Hom lives in a degree with |degree| > n0.
bool xhom_bounded_check(const QStabilityDatum& d, int n0);

}  // namespace qdl
