#include "qdl/periods.hpp"

#include <cmath>
#include <stdexcept>

namespace qdl {

namespace {

cplx match_branch(cplx principal, cplx ref) {
  return std::abs(principal - ref) <= std::abs(principal + ref) ? principal
                                                                : -principal;
}

// Branch state of sqrt(xi) continued along a path. For cy_s and plain the
// multivalued part is f^{s-2}, tracked through a continued log f; for
// exp_type it is e^f and f itself is tracked. The omega square root is
// branch-matched step by step.
struct XiBranch {
  const QDifferential* q = nullptr;
  cplx logf;   // continued log f, or f for exp_type, sheet shift included
  cplx f_prev;
  cplx sqrt_om;
  cplx z;

  void init(const QDifferential& qd, cplx z0, int sheet) {
    q = &qd;
    z = z0;
    cplx f = eval_f(qd.cover, z0);
    f_prev = f;
    logf = qd.flavor == QFlavor::exp_type ? f : std::log(f);
    logf += cplx(0.0, 2.0 * M_PI * sheet);
    sqrt_om = std::sqrt(qd.omega.coefficient(z0));
  }
  void add_sheets(int dn) { logf += cplx(0.0, 2.0 * M_PI * dn); }
  // Continue to zz; steps must keep the change of arg f below pi.
  void advance(cplx zz) {
    cplx f = eval_f(q->cover, zz);
    logf += q->flavor == QFlavor::exp_type ? f - f_prev : std::log(f / f_prev);
    f_prev = f;
    sqrt_om = match_branch(std::sqrt(q->omega.coefficient(zz)), sqrt_om);
    z = zz;
  }
  cplx value() const {
    cplx g = q->flavor == QFlavor::exp_type ? logf : (q->s - 2.0) * logf;
    return std::exp(0.5 * g) * sqrt_om;
  }
};

// Trapezoid on one straight segment with subdivision doubling until the
// increment stabilizes; the branch state is committed at the far end.
cplx integrate_segment(XiBranch& st, cplx b, double tol = 1e-10) {
  XiBranch start = st;
  cplx a = start.z;
  cplx prev_inc = 0.0;
  for (int n = 32;; n *= 2) {
    XiBranch cur = start;
    cplx inc = 0.0;
    cplx prev_val = cur.value();
    for (int i = 1; i <= n; ++i) {
      cur.advance(a + (b - a) * (double(i) / n));
      cplx v = cur.value();
      inc += 0.5 * (prev_val + v) * ((b - a) / double(n));
      prev_val = v;
    }
    if ((n >= 64 && std::abs(inc - prev_inc) < tol * (1.0 + std::abs(inc))) ||
        n >= (1 << 15)) {
      st = cur;
      return inc;
    }
    prev_inc = inc;
  }
}

// Integral from a declared zero z0 up to the state's current point, using
// the substitution z = z0 + delta u^p that makes the integrand regular. The
// branch is continued backward from the known state at the outer end.
cplx tail_from_zero(const XiBranch& outer, cplx z0, double p) {
  XiBranch cur = outer;
  cplx delta = outer.z - z0;
  int n = 2048;
  cplx acc = 0.0;
  for (int i = n; i-- > 0;) {
    double u = (i + 0.5) / n;
    cur.advance(z0 + delta * std::pow(u, p));
    cplx jac = delta * p * std::pow(u, p - 1.0) / double(n);
    acc += cur.value() * jac;
  }
  return acc;
}

}  // namespace

cplx period(const QDifferential& q, const SheetPath& path) {
  const std::vector<cplx>& pts = path.polyline;
  if (pts.size() < 2) throw std::invalid_argument("period needs a polyline");
  std::vector<int> ofs = path.sheet_offsets;
  if (ofs.empty()) ofs.assign(pts.size(), 0);
  if (ofs.size() != pts.size())
    throw std::invalid_argument("sheet_offsets must align with the polyline");
  int nz = static_cast<int>(q.zeros.size());
  if (path.endpoint_a >= nz || path.endpoint_b >= nz)
    throw std::invalid_argument("endpoint zero index out of range");

  // Zeros of f are singular points of xi only in the f^{s-2} flavors.
  bool za = path.endpoint_a >= 0 && q.flavor != QFlavor::exp_type;
  bool zb = path.endpoint_b >= 0 && q.flavor != QFlavor::exp_type;
  if ((za || zb) && q.s.real() <= 2.0)
    throw std::runtime_error(
        "non-integrable endpoint: Re s <= 2 at a declared zero");
  if (za && std::abs(pts.front() - q.zeros[path.endpoint_a]) > 1e-8)
    throw std::invalid_argument("endpoint_a does not match the polyline");
  if (zb && std::abs(pts.back() - q.zeros[path.endpoint_b]) > 1e-8)
    throw std::invalid_argument("endpoint_b does not match the polyline");

  double p = 2.0 / q.s.real();
  std::vector<cplx> work = pts;
  cplx zero_a = 0.0, zero_b = 0.0;
  if (za) {
    zero_a = q.zeros[path.endpoint_a];
    cplx dir = pts[1] - pts[0];
    work.front() = zero_a + dir / std::abs(dir) *
                                std::min(0.05, 0.25 * std::abs(dir));
  }
  if (zb) {
    zero_b = q.zeros[path.endpoint_b];
    cplx dir = pts[pts.size() - 2] - pts.back();
    work.back() = zero_b + dir / std::abs(dir) *
                               std::min(0.05, 0.25 * std::abs(dir));
  }

  XiBranch st;
  st.init(q, work.front(), ofs.front());
  cplx head = za ? tail_from_zero(st, zero_a, p) : cplx(0.0);
  cplx mid = 0.0;
  for (size_t i = 0; i + 1 < work.size(); ++i) {
    if (i > 0 && ofs[i] != ofs[i - 1]) st.add_sheets(ofs[i] - ofs[i - 1]);
    mid += integrate_segment(st, work[i + 1]);
  }
  cplx tail = zb ? tail_from_zero(st, zero_b, p) : cplx(0.0);
  return double(path.branch_sign) * (head + mid - tail);
}

SheetPath q_shift(const SheetPath& path, int m) {
  SheetPath out = path;
  if (out.sheet_offsets.empty())
    out.sheet_offsets.assign(out.polyline.size(), 0);
  for (int& o : out.sheet_offsets) o += m;
  return out;
}

LaurentPoly laurent_monomial(int exponent, long long coefficient) {
  LaurentPoly p;
  if (coefficient != 0) p.c[exponent] = coefficient;
  return p;
}

cplx laurent_eval(const LaurentPoly& p, cplx s) {
  cplx acc = 0.0;
  for (const auto& [k, c] : p.c)
    acc += double(c) * std::exp(cplx(0.0, 1.0) * M_PI * s * double(k));
  return acc;
}

LaurentVector q_act(const LaurentVector& v, int m) {
  LaurentVector out(v.size());
  for (size_t i = 0; i < v.size(); ++i)
    for (const auto& [k, c] : v[i].c) out[i].c[k + m] = c;
  return out;
}

cplx specialize_charge(const LaurentVector& v,
                       const std::vector<cplx>& base_charges, cplx s) {
  if (v.size() != base_charges.size())
    throw std::invalid_argument("charge vector length mismatch");
  cplx acc = 0.0;
  for (size_t i = 0; i < v.size(); ++i)
    acc += laurent_eval(v[i], s) * base_charges[i];
  return acc;
}

RankReport lattice_rank_audit(const MarkedSurfaceData& surf, int strip_count,
                              bool saddle_free) {
  RankReport r;
  r.hat_rank = hat_rank(surf);
  r.strip_count = strip_count;
  r.asserted = saddle_free;
  if (!saddle_free) {
    r.match = false;
    r.message = "decomposition not saddle-free: rank comparison skipped";
  } else if (strip_count == r.hat_rank) {
    r.match = true;
    r.message = "strip count matches the hat homology rank";
  } else {
    r.match = false;
    r.message = "strip count differs from the hat homology rank";
  }
  return r;
}

}  // namespace qdl
