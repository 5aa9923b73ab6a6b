#pragma once

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "qdl/poly.hpp"

namespace qdl {

// Genus-zero Hurwitz cover: a rational function f = num/den on P^1 with
// declared poles and orders. The distinguished pole sits at infinity with
// leading coefficient one whenever the cover is normalized.
struct PoleSpec {
  cplx z = 0.0;
  int k = 1;
  bool at_infinity = false;
};

struct HurwitzCover {
  Poly num = {cplx(0.0)};
  Poly den = {cplx(1.0)};
  std::vector<PoleSpec> poles;
  bool normalized = true;
};

enum class QFlavor { cy_s, exp_type, plain };

struct Singularity {
  cplx z = 0.0;
  bool at_infinity = false;
  bool is_zero = false;  // else a pole-type singularity
  int order = 1;         // k for poles, 1 for s-simple zeros
  cplx exponent = 0.0;   // local growth exponent of the coefficient
};

// Omega_l = prod (z - z_i)^{-l_i} dz^2; an l assigned to infinity does not
// enter the z-chart coefficient.
struct PrimaryDifferential {
  std::vector<std::pair<cplx, int>> finite;
  int l_infinity = 0;
  cplx coefficient(cplx z) const;
  // Logarithmic derivative of the coefficient, always single-valued.
  cplx dlog(cplx z) const;
};

struct QDifferential {
  HurwitzCover cover;
  std::vector<int> l;  // aligned with cover.poles
  cplx s = 3.0;
  QFlavor flavor = QFlavor::plain;
  PrimaryDifferential omega;
  std::vector<Singularity> singularities;
  std::vector<cplx> zeros;  // simple zeros of f
  cplx base_point = 0.0;    // branch anchor for the multi-valued flavors
  cplx base_log = 0.0;      // stored log f at base_point
};

cplx eval_f(const HurwitzCover& c, cplx z);
cplx dlog_f(const HurwitzCover& c, cplx z);  // f'/f, analytic formula
std::vector<cplx> cover_zeros(const HurwitzCover& c);

// Monic centered type-A cover z^{n+1} + a[0] z^{n-1} + ... + a[n-1] with its
// single order-(n+1) pole at infinity.
HurwitzCover type_a_cover(const std::vector<cplx>& a);
// Random regular type-A cover; resamples until all zeros are simple.
HurwitzCover random_type_a(int n, std::mt19937& rng);

PrimaryDifferential primary_differential(
    const std::vector<std::pair<cplx, int>>& finite_poles, int l_infinity);

// Validates and assembles the differential; computes and stores the local
// exponents. Throws on non-simple zeros (cy_s), on sum l != 4, and on a
// violated higher-order-pole condition Re(k(s-2)+l) > 2.
QDifferential make_qdiff(const HurwitzCover& cover, const std::vector<int>& l,
                         cplx s, QFlavor flavor);

// Coefficient of the differential in the z-chart. cy_s uses the principal
// branch of f^{s-2}; sheet-aware evaluation lives in the periods module.
cplx coefficient(const QDifferential& q, cplx z);

struct ZeroCountReport {
  int count = 0;
  int expected = 0;
  bool ok = false;
  std::string message;
};
ZeroCountReport zero_count_check(const QDifferential& q);

int hurwitz_dimension(int genus, const std::vector<int>& k);

// (omega . f)(z) = f(omega^{-1} z) renormalized monic, omega = e^{2 pi i m /
// (n+1)}; acts on coefficients as a_i -> omega^{i+1} a_i. Type-A input only.
HurwitzCover cyclic_action(const HurwitzCover& c, int m);

// Reconstructs f = (xi / Omega_l)^{1/(s-2)} from an evaluator for the
// coefficient of xi. The evaluator may return any branch pointwise; the
// continuation corrects the 2 pi i ((s-2) m + n) jumps step by step. When
// base_log is supplied it anchors log f at base_point; otherwise the
// principal value is taken and the result carries the omega_{s-2}^m
// ambiguity.
struct RecoverOptions {
  cplx base_point = 0.0;
  bool has_base_log = false;
  cplx base_log = 0.0;
  int circle_samples = 1024;
};
HurwitzCover recover_cover(const std::function<cplx(cplx)>& xi,
                           const std::vector<PoleSpec>& poles,
                           const std::vector<int>& l, cplx s,
                           const RecoverOptions& opt = {});

}  // namespace qdl
