#include "qdl/qstab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qdl {

std::pair<cplx, double> normalize_charge(cplx z) {
  if (std::abs(z) == 0.0)
    throw std::invalid_argument("central charge must be nonzero");
  double phi = std::arg(z) / M_PI;  // in (-1, 1]
  if (phi <= 0.0) {
    z = -z;
    phi += 1.0;
  }
  return {z, phi};
}

StabilityDatum from_strips(const StripDecomposition& dec,
                           const QDifferential& q) {
  if (!dec.saddle_free)
    throw std::invalid_argument("from_strips needs a saddle-free decomposition");
  (void)q;
  StabilityDatum d;
  int n = static_cast<int>(dec.strips.size());
  for (int i = 0; i < n; ++i) {
    const Strip& st = dec.strips[i];
    d.labels.push_back("strip_" + std::to_string(st.zero_a) + "_" +
                       std::to_string(st.zero_b));
    auto [z, phi] = normalize_charge(st.period);
    d.charges.push_back(z);
    d.phases.push_back(phi);
    d.hom_degrees.push_back({i, i, 0});
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const Strip& a = dec.strips[i];
      const Strip& b = dec.strips[j];
      bool shared = a.zero_a == b.zero_a || a.zero_a == b.zero_b ||
                    a.zero_b == b.zero_a || a.zero_b == b.zero_b;
      if (shared) d.hom_degrees.push_back({i, j, 1});
    }
  return d;
}

double gldim(const StabilityDatum& d) {
  double best = -std::numeric_limits<double>::infinity();
  for (const HomEntry& h : d.hom_degrees) {
    if (h.from < 0 || h.to < 0 ||
        h.from >= static_cast<int>(d.phases.size()) ||
        h.to >= static_cast<int>(d.phases.size()))
      throw std::invalid_argument("hom table references a missing object");
    best = std::max(best, d.phases[h.to] + double(h.degree) - d.phases[h.from]);
  }
  return best;
}

QStabilityDatum induce(const StabilityDatum& d, cplx s, InduceMode mode,
                       int k_min, int k_max) {
  double g = gldim(d);
  if (mode == InduceMode::open && !(g + 1.0 < s.real()))
    throw std::invalid_argument("open inducing needs gldim + 1 < Re(s)");
  if (mode == InduceMode::closed && !(g + 1.0 <= s.real()))
    throw std::invalid_argument("closed inducing needs gldim + 1 <= Re(s)");

  QStabilityDatum out;
  out.base = d;
  out.s = s;
  for (int k = k_min; k <= k_max; ++k)
    for (double phi : d.phases) out.induced_phases.push_back(phi + k * s.real());
  std::sort(out.induced_phases.begin(), out.induced_phases.end());

  int n = static_cast<int>(d.charges.size());
  out.lattice.rank = n;
  out.lattice.labels = d.labels;
  for (int i = 0; i < n; ++i) {
    LaurentVector v(n);
    v[i] = laurent_monomial(0);
    out.lattice.vectors.push_back(v);
    out.specialized.push_back(specialize_charge(v, d.charges, s));
  }

  // C |Z(alpha)| > ||alpha|| on the recorded basis classes; sup-norm in the
  // strip basis makes every recorded norm 1.
  double min_z = std::numeric_limits<double>::infinity();
  for (cplx z : d.charges) min_z = std::min(min_z, std::abs(z));
  if (n > 0) out.support_constant = 2.0 / min_z;
  return out;
}

bool xhom_bounded_check(const QStabilityDatum& d, int n0) {
  for (const HomEntry& h : d.base.hom_degrees)
    if (std::abs(h.degree) > n0) return false;
  return true;
}

}  // namespace qdl
