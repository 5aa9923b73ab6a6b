#include "qdl/hurwitz.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qdl {

namespace {

cplx ipow(cplx z, int n) {
  if (n < 0) return 1.0 / ipow(z, -n);
  cplx acc = 1.0;
  while (n > 0) {
    if (n & 1) acc *= z;
    z *= z;
    n >>= 1;
  }
  return acc;
}

int total_order(const std::vector<PoleSpec>& poles) {
  int sum = 0;
  for (const PoleSpec& p : poles) sum += p.k;
  return sum;
}

int infinity_order(const std::vector<PoleSpec>& poles) {
  for (const PoleSpec& p : poles)
    if (p.at_infinity) return p.k;
  return 0;
}

}  // namespace

cplx PrimaryDifferential::coefficient(cplx z) const {
  cplx acc = 1.0;
  for (const auto& [zi, li] : finite) acc *= ipow(z - zi, -li);
  return acc;
}

cplx PrimaryDifferential::dlog(cplx z) const {
  cplx acc = 0.0;
  for (const auto& [zi, li] : finite) acc -= double(li) / (z - zi);
  return acc;
}

cplx eval_f(const HurwitzCover& c, cplx z) {
  return eval(c.num, z) / eval(c.den, z);
}

cplx dlog_f(const HurwitzCover& c, cplx z) {
  cplx out = eval(derivative(c.num), z) / eval(c.num, z);
  if (degree(c.den) > 0)
    out -= eval(derivative(c.den), z) / eval(c.den, z);
  return out;
}

std::vector<cplx> cover_zeros(const HurwitzCover& c) {
  std::vector<cplx> zs = roots(c.num);
  // Drop spurious roots cancelled by the denominator.
  std::vector<cplx> out;
  for (cplx z : zs)
    if (std::abs(eval(c.den, z)) > 1e-9) out.push_back(z);
  return out;
}

HurwitzCover type_a_cover(const std::vector<cplx>& a) {
  int n = static_cast<int>(a.size());
  HurwitzCover c;
  c.num.assign(n + 2, 0.0);
  c.num[n + 1] = 1.0;
  for (int i = 1; i <= n; ++i) c.num[n - i] = a[i - 1];
  c.den = {cplx(1.0)};
  c.poles.push_back({0.0, n + 1, true});
  return c;
}

HurwitzCover random_type_a(int n, std::mt19937& rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  while (true) {
    std::vector<cplx> a(n);
    for (cplx& x : a) {
      do {
        x = cplx(2.0 * unit(rng), 2.0 * unit(rng));
      } while (std::abs(x) > 2.0);
    }
    HurwitzCover c = type_a_cover(a);
    std::vector<cplx> zs = cover_zeros(c);
    double sep = 1e18, scl = 1.0;
    for (size_t i = 0; i < zs.size(); ++i) {
      scl = std::max(scl, std::abs(zs[i]));
      for (size_t j = i + 1; j < zs.size(); ++j)
        sep = std::min(sep, std::abs(zs[i] - zs[j]));
    }
    if (sep > 1e-3 * scl) return c;
  }
}

PrimaryDifferential primary_differential(
    const std::vector<std::pair<cplx, int>>& finite_poles, int l_infinity) {
  int sum = l_infinity;
  for (const auto& [z, l] : finite_poles) {
    (void)z;
    sum += l;
  }
  if (sum != 4)
    throw std::invalid_argument("primary differential needs sum l_i = 4");
  PrimaryDifferential omega;
  omega.finite = finite_poles;
  omega.l_infinity = l_infinity;
  return omega;
}

QDifferential make_qdiff(const HurwitzCover& cover, const std::vector<int>& l,
                         cplx s, QFlavor flavor) {
  if (l.size() != cover.poles.size())
    throw std::invalid_argument("l-vector must align with the declared poles");
  QDifferential q;
  q.cover = cover;
  q.l = l;
  q.s = s;
  q.flavor = flavor;

  std::vector<std::pair<cplx, int>> omega_finite;
  int l_inf = 0;
  for (size_t i = 0; i < cover.poles.size(); ++i) {
    if (cover.poles[i].at_infinity)
      l_inf += l[i];
    else
      omega_finite.push_back({cover.poles[i].z, l[i]});
  }
  q.omega = primary_differential(omega_finite, l_inf);

  // Degree bookkeeping: den carries the finite poles, infinity the rest.
  int k_inf = infinity_order(cover.poles);
  int k_fin = total_order(cover.poles) - k_inf;
  if (degree(cover.den) != k_fin)
    throw std::invalid_argument("denominator degree disagrees with finite k");
  if (degree(cover.num) != k_fin + k_inf)
    throw std::invalid_argument(
        "numerator degree disagrees with the declared pole orders");
  for (const PoleSpec& p : cover.poles)
    if (!p.at_infinity && std::abs(eval(cover.den, p.z)) > 1e-6)
      throw std::invalid_argument("denominator does not vanish at a declared pole");

  q.zeros = cover_zeros(cover);
  double scl = 1.0, sep = 1e18;
  for (size_t i = 0; i < q.zeros.size(); ++i) {
    scl = std::max(scl, std::abs(q.zeros[i]));
    for (size_t j = i + 1; j < q.zeros.size(); ++j)
      sep = std::min(sep, std::abs(q.zeros[i] - q.zeros[j]));
  }
  bool regular = sep > 1e-8 * scl;

  if (flavor == QFlavor::cy_s) {
    if (!regular) throw std::invalid_argument("cover not regular: zeros not simple");
    if (s.real() <= 2.0)
      throw std::invalid_argument("cy_s flavor needs Re(s) > 2");
    for (size_t i = 0; i < cover.poles.size(); ++i) {
      cplx exponent = double(cover.poles[i].k) * (s - 2.0) + double(l[i]);
      if (exponent.real() <= 2.0)
        throw std::invalid_argument(
            "higher-order-pole condition violated: Re(k(s-2)+l) <= 2");
    }
  }
  if (flavor == QFlavor::plain) {
    if (std::abs(s.imag()) > 1e-9 ||
        std::abs(s.real() - std::round(s.real())) > 1e-9)
      throw std::invalid_argument("plain flavor needs an integer s");
  }

  for (cplx z : q.zeros)
    q.singularities.push_back({z, false, true, 1, s - 2.0});
  for (size_t i = 0; i < cover.poles.size(); ++i) {
    cplx exponent = flavor == QFlavor::exp_type
                        ? cplx(-double(l[i]))
                        : -(double(cover.poles[i].k) * (s - 2.0) + double(l[i]));
    q.singularities.push_back(
        {cover.poles[i].z, cover.poles[i].at_infinity, false,
         cover.poles[i].k, exponent});
  }
  return q;
}

cplx coefficient(const QDifferential& q, cplx z) {
  cplx om = q.omega.coefficient(z);
  cplx f = eval_f(q.cover, z);
  switch (q.flavor) {
    case QFlavor::plain: {
      int e = static_cast<int>(std::lround(q.s.real())) - 2;
      return ipow(f, e) * om;
    }
    case QFlavor::exp_type:
      return std::exp(f) * om;
    case QFlavor::cy_s:
      return std::exp((q.s - 2.0) * std::log(f)) * om;
  }
  return 0.0;
}

ZeroCountReport zero_count_check(const QDifferential& q) {
  ZeroCountReport r;
  r.count = static_cast<int>(q.zeros.size());
  r.expected = total_order(q.cover.poles);
  r.ok = r.count == r.expected;
  if (!r.ok)
    r.message = "zero count " + std::to_string(r.count) +
                " != sum k_i = " + std::to_string(r.expected);
  return r;
}

int hurwitz_dimension(int genus, const std::vector<int>& k) {
  int sum = 0;
  for (int ki : k) sum += ki;
  return 2 * genus - 2 + static_cast<int>(k.size()) + sum;
}

HurwitzCover cyclic_action(const HurwitzCover& c, int m) {
  if (degree(c.den) != 0 || c.poles.size() != 1 || !c.poles[0].at_infinity)
    throw std::invalid_argument("cyclic action needs a type-A cover");
  int n1 = degree(c.num);  // n + 1
  if (std::abs(c.num[n1] - 1.0) > 1e-9 ||
      (n1 >= 2 && std::abs(c.num[n1 - 1]) > 1e-9))
    throw std::invalid_argument("cyclic action needs a monic centered cover");
  cplx omega = std::exp(cplx(0.0, 2.0 * M_PI * m / n1));
  HurwitzCover out = c;
  // a_i multiplies z^{n-i}; a_i -> omega^{i+1} a_i.
  for (int j = 0; j <= n1 - 2; ++j) out.num[j] *= ipow(omega, n1 - j);
  return out;
}

HurwitzCover recover_cover(const std::function<cplx(cplx)>& xi,
                           const std::vector<PoleSpec>& poles,
                           const std::vector<int>& l, cplx s,
                           const RecoverOptions& opt) {
  if (l.size() != poles.size())
    throw std::invalid_argument("l-vector must align with the declared poles");
  std::vector<std::pair<cplx, int>> omega_finite;
  int l_inf = 0;
  for (size_t i = 0; i < poles.size(); ++i) {
    if (poles[i].at_infinity)
      l_inf += l[i];
    else
      omega_finite.push_back({poles[i].z, l[i]});
  }
  PrimaryDifferential omega = primary_differential(omega_finite, l_inf);

  double radius = 3.0;
  for (const PoleSpec& p : poles)
    if (!p.at_infinity) radius = std::max(radius, 2.0 * std::abs(p.z) + 3.0);

  auto g_of = [&](cplx z) { return xi(z) / omega.coefficient(z); };

  // Continue h = log g along base_point -> circle -> around the circle. The
  // evaluator may hop branches between samples; each step increment is
  // corrected by the candidate 2 pi i ((s-2) m + n) closest to analytic
  // continuation (the true increment is small for small steps).
  auto step_log = [&](cplx g_prev, cplx g_next) {
    cplx base = std::log(g_next / g_prev);
    cplx best = base;
    double best_mag = std::abs(base);
    for (int m = -2; m <= 2; ++m)
      for (int n = -2; n <= 2; ++n) {
        cplx cand = base + cplx(0.0, 2.0 * M_PI) * ((s - 2.0) * double(m) +
                                                    double(n));
        if (std::abs(cand) < best_mag) {
          best_mag = std::abs(cand);
          best = cand;
        }
      }
    if (best_mag > 1.0)
      throw std::runtime_error(
          "branch continuation failure: step increment too large");
    return best;
  };

  int n_circle = opt.circle_samples;
  cplx start = opt.base_point;
  cplx circle0 = radius * std::exp(cplx(0.0, std::abs(start) > 1e-12
                                                 ? std::arg(start)
                                                 : 0.0));
  // Without an anchored base value the basepoint is immaterial; start on the
  // sampling circle, safely away from the singularities.
  if (!opt.has_base_log && std::abs(start) < 1e-12) start = circle0;
  // Radial leg.
  int n_radial = 256;
  cplx g_prev = g_of(start);
  cplx h = std::log(g_prev);  // principal anchor; rebased below
  cplx h_start = h;
  for (int i = 1; i <= n_radial; ++i) {
    cplx z = start + (circle0 - start) * (double(i) / n_radial);
    cplx g = g_of(z);
    h += step_log(g_prev, g);
    g_prev = g;
  }
  // Circle leg, collecting the interpolation samples.
  std::vector<cplx> zs(n_circle), fs(n_circle);
  double theta0 = std::arg(circle0);
  cplx h_circle0 = h;
  cplx logf_offset;
  if (opt.has_base_log)
    logf_offset = opt.base_log - h_start / (s - 2.0);
  else
    logf_offset = 0.0;  // principal at the basepoint, omega_{s-2}^m ambiguity
  for (int i = 0; i < n_circle; ++i) {
    cplx z = radius * std::exp(cplx(0.0, theta0 + 2.0 * M_PI * i / n_circle));
    if (i > 0) {
      cplx g = g_of(z);
      h += step_log(g_prev, g);
      g_prev = g;
    }
    zs[i] = z;
    fs[i] = std::exp(h / (s - 2.0) + logf_offset);
  }
  // Close the loop and check the declared polar type: log f must wind by an
  // integer multiple of 2 pi i around a circle enclosing everything.
  {
    cplx g = g_of(zs[0]);
    cplx h_closed = h + step_log(g_prev, g);
    cplx winding = (h_closed - h_circle0) / (s - 2.0) / cplx(0.0, 2.0 * M_PI);
    if (std::abs(winding - std::round(winding.real())) > 1e-6 ||
        std::abs(winding.imag()) > 1e-6)
      throw std::runtime_error(
          "polar-type inconsistency: non-integer winding of log f");
  }

  // f times the finite-pole factor is a polynomial of degree sum k_i.
  int k_fin = 0, k_all = total_order(poles);
  Poly den = {cplx(1.0)};
  for (const PoleSpec& p : poles)
    if (!p.at_infinity) {
      k_fin += p.k;
      for (int r = 0; r < p.k; ++r) den = multiply(den, {-p.z, cplx(1.0)});
    }
  std::vector<cplx> ps(n_circle);
  for (int i = 0; i < n_circle; ++i) ps[i] = fs[i] * eval(den, zs[i]);
  Poly num = interpolate(zs, ps, k_all);
  double resid = 0.0, scl = 0.0;
  for (int i = 0; i < n_circle; ++i) {
    resid = std::max(resid, std::abs(eval(num, zs[i]) - ps[i]));
    scl = std::max(scl, std::abs(ps[i]));
  }
  if (resid > 1e-6 * scl)
    throw std::runtime_error(
        "polar-type inconsistency: samples are not polynomial of the declared degree");

  HurwitzCover out;
  out.num = num;
  out.den = den;
  out.poles = poles;
  out.normalized = std::abs(num[k_all] - 1.0) < 1e-6;
  return out;
}

}  // namespace qdl
