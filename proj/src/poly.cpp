#include "qdl/poly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qdl {

Poly trim(Poly p, double eps) {
  while (p.size() > 1 && std::abs(p.back()) < eps) p.pop_back();
  if (p.empty()) p.push_back(0.0);
  return p;
}

int degree(const Poly& p) {
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
    if (p[i] != cplx(0.0)) return i;
  return 0;
}

cplx eval(const Poly& p, cplx z) {
  cplx acc = 0.0;
  for (size_t i = p.size(); i-- > 0;) acc = acc * z + p[i];
  return acc;
}

Poly derivative(const Poly& p) {
  if (p.size() <= 1) return {cplx(0.0)};
  Poly d(p.size() - 1);
  for (size_t i = 1; i < p.size(); ++i) d[i - 1] = p[i] * double(i);
  return d;
}

Poly multiply(const Poly& a, const Poly& b) {
  Poly out(a.size() + b.size() - 1, 0.0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

Poly add(const Poly& a, const Poly& b) {
  Poly out(std::max(a.size(), b.size()), 0.0);
  for (size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

Poly scale(const Poly& p, cplx c) {
  Poly out = p;
  for (cplx& x : out) x *= c;
  return out;
}

Poly from_roots(const std::vector<cplx>& roots) {
  Poly p = {cplx(1.0)};
  for (cplx r : roots) p = multiply(p, {-r, cplx(1.0)});
  return p;
}

std::vector<cplx> roots(const Poly& input) {
  Poly p = trim(input);
  int n = static_cast<int>(p.size()) - 1;
  // Strip roots at the origin so the initial radius below is well defined.
  int at_zero = 0;
  while (n > 0 && std::abs(p[0]) < 1e-300) {
    p.erase(p.begin());
    ++at_zero;
    --n;
  }
  std::vector<cplx> out(at_zero, 0.0);
  if (n == 0) return out;
  if (n == 1) {
    out.push_back(-p[0] / p[1]);
    return out;
  }

  // Aberth-Ehrlich: start on a circle sized by the coefficient magnitudes,
  // with an irrational angle offset to dodge symmetric stalls.
  double rad = 0.0;
  for (int i = 0; i < n; ++i)
    rad = std::max(rad, std::pow(std::abs(p[i] / p[n]), 1.0 / (n - i)));
  rad = 2.0 * rad + 1e-3;
  std::vector<cplx> z(n);
  for (int i = 0; i < n; ++i) {
    double ang = 2.0 * M_PI * i / n + 0.3973861;
    z[i] = rad * cplx(std::cos(ang), std::sin(ang));
  }

  Poly dp = derivative(p);
  for (int iter = 0; iter < 600; ++iter) {
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      cplx pv = eval(p, z[i]);
      cplx dv = eval(dp, z[i]);
      cplx newton = dv == cplx(0.0) ? cplx(0.0) : pv / dv;
      cplx repulse = 0.0;
      for (int j = 0; j < n; ++j)
        if (j != i) repulse += 1.0 / (z[i] - z[j]);
      cplx denom = 1.0 - newton * repulse;
      cplx step = denom == cplx(0.0) ? newton : newton / denom;
      z[i] -= step;
      worst = std::max(worst, std::abs(step));
    }
    if (worst < 1e-14 * (1.0 + rad)) break;
  }
  out.insert(out.end(), z.begin(), z.end());
  return out;
}

Poly interpolate(const std::vector<cplx>& points,
                 const std::vector<cplx>& values, int deg) {
  int n = deg + 1;
  if (static_cast<int>(points.size()) < n || points.size() != values.size())
    throw std::invalid_argument("interpolate: need at least deg+1 samples");
  // Normal equations of the Vandermonde system, solved by Gaussian
  // elimination with partial pivoting. Sample sets are caller-chosen
  // (scaled roots of unity), so conditioning stays mild.
  int m = static_cast<int>(points.size());
  std::vector<std::vector<cplx>> a(n, std::vector<cplx>(n, 0.0));
  std::vector<cplx> b(n, 0.0);
  for (int s = 0; s < m; ++s) {
    std::vector<cplx> pw(n);
    pw[0] = 1.0;
    for (int i = 1; i < n; ++i) pw[i] = pw[i - 1] * points[s];
    for (int i = 0; i < n; ++i) {
      b[i] += std::conj(pw[i]) * values[s];
      for (int j = 0; j < n; ++j) a[i][j] += std::conj(pw[i]) * pw[j];
    }
  }
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    std::swap(a[col], a[piv]);
    std::swap(b[col], b[piv]);
    if (std::abs(a[col][col]) < 1e-300)
      throw std::runtime_error("interpolate: singular sample matrix");
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      cplx fac = a[r][col] / a[col][col];
      for (int c = col; c < n; ++c) a[r][c] -= fac * a[col][c];
      b[r] -= fac * b[col];
    }
  }
  Poly out(n);
  for (int i = 0; i < n; ++i) out[i] = b[i] / a[i][i];
  return out;
}

}  // namespace qdl
