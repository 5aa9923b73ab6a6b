#include "qdl/winding.hpp"

#include <cmath>
#include <stdexcept>

namespace qdl {

LoopSpec circle_loop(cplx center, double radius, int samples, bool ccw) {
  LoopSpec l;
  l.is_circle = true;
  l.center = center;
  l.radius = radius;
  l.samples = samples;
  l.ccw = ccw;
  return l;
}

LoopSpec polyline_loop(std::vector<cplx> vertices) {
  LoopSpec l;
  l.is_circle = false;
  l.polyline = std::move(vertices);
  return l;
}

namespace {

// First quadrature term: 1/2 Im oint (f'/f) dz by the trapezoid rule (the
// integrand is periodic on a closed loop, so trapezoid is spectrally
// accurate on circles).
double coefficient_term(const std::function<cplx(cplx)>& dlog,
                        const LoopSpec& loop) {
  cplx acc = 0.0;
  if (loop.is_circle) {
    double orient = loop.ccw ? 1.0 : -1.0;
    for (int i = 0; i < loop.samples; ++i) {
      double t = 2.0 * M_PI * i / loop.samples;
      cplx z = loop.center + loop.radius * std::exp(cplx(0.0, orient * t));
      cplx zdot =
          cplx(0.0, orient) * loop.radius * std::exp(cplx(0.0, orient * t));
      acc += dlog(z) * zdot * (2.0 * M_PI / loop.samples);
    }
  } else {
    const std::vector<cplx>& v = loop.polyline;
    if (v.size() < 3) throw std::invalid_argument("polyline loop too short");
    size_t n = v.size();
    int sub = std::max(8, loop.samples / static_cast<int>(n));
    for (size_t e = 0; e < n; ++e) {
      cplx a = v[e], b = v[(e + 1) % n];
      cplx dz = (b - a) / double(sub);
      for (int i = 0; i < sub; ++i)
        acc += dlog(a + dz * (double(i) + 0.5)) * dz;
    }
  }
  return 0.5 * acc.imag();
}

// Second term: total turning of the tangent along the loop.
double turning_term(const LoopSpec& loop) {
  if (loop.is_circle) return loop.ccw ? 2.0 * M_PI : -2.0 * M_PI;
  const std::vector<cplx>& v = loop.polyline;
  size_t n = v.size();
  double total = 0.0;
  for (size_t e = 0; e < n; ++e) {
    cplx d1 = v[(e + 1) % n] - v[e];
    cplx d2 = v[(e + 2) % n] - v[(e + 1) % n];
    total += std::arg(d2 / d1);
  }
  return total;
}

}  // namespace

double angle_change(const std::function<cplx(cplx)>& dlog,
                    const LoopSpec& loop) {
  return coefficient_term(dlog, loop) + turning_term(loop);
}

double angle_change_numeric(const std::function<cplx(cplx)>& f,
                            const LoopSpec& loop) {
  double h = loop.is_circle ? 1e-6 * loop.radius : 1e-6;
  auto dlog = [&](cplx z) {
    cplx fz = f(z);
    if (std::abs(fz) < 1e-12)
      throw std::runtime_error("angle_change: |f| nearly vanishes on the loop");
    return (f(z + h) - f(z - h)) / (2.0 * h) / fz;
  };
  return angle_change(dlog, loop);
}

double winding_number(const std::function<cplx(cplx)>& dlog,
                      const LoopSpec& loop) {
  return angle_change(dlog, loop) / M_PI;
}

bool estimate_bound_check(int k_i, int l_i, cplx s, int observed_k) {
  double threshold =
      double(k_i) - double(k_i + 3 - l_i) / s.real();
  return double(observed_k) > threshold;
}

std::function<cplx(cplx)> dlog_power(cplx center, cplx exponent) {
  return [=](cplx z) { return exponent / (z - center); };
}

std::function<cplx(cplx)> dlog_sum(
    std::vector<std::pair<cplx, cplx>> center_exponent) {
  return [terms = std::move(center_exponent)](cplx z) {
    cplx acc = 0.0;
    for (const auto& [c, e] : terms) acc += e / (z - c);
    return acc;
  };
}

std::function<cplx(cplx)> dlog_exp_type(cplx center, int k, int l) {
  return [=](cplx z) {
    cplx u = z - center;
    cplx upow = 1.0;
    for (int i = 0; i < k + 1; ++i) upow *= u;
    return -double(k) / upow - double(l) / u;
  };
}

}  // namespace qdl
