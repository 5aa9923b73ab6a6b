#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "qdl/poly.hpp"

namespace qdl {

// Closed loop for angle-change quadrature: either a sampled circle or an
// explicit closed polyline (first vertex repeated implicitly).
struct LoopSpec {
  bool is_circle = true;
  cplx center = 0.0;
  double radius = 1.0;
  int samples = 4096;
  bool ccw = true;
  std::vector<cplx> polyline;
};

LoopSpec circle_loop(cplx center, double radius, int samples = 4096,
                     bool ccw = true);
LoopSpec polyline_loop(std::vector<cplx> vertices);

// AC(gamma) = 1/2 Im oint (f'/f) zdot dt + Im oint (zddot/zdot) dt. The
// second term is the total turning of the tangent: exactly +-2 pi for
// circles, the sum of exterior angles for polylines. dlog is the analytic
// f'/f evaluator.
double angle_change(const std::function<cplx(cplx)>& dlog,
                    const LoopSpec& loop);

// AC with f'/f from central differences of f; throws when |f| nearly
// vanishes on the loop.
double angle_change_numeric(const std::function<cplx(cplx)>& f,
                            const LoopSpec& loop);

double winding_number(const std::function<cplx(cplx)>& dlog,
                      const LoopSpec& loop);

// Sanity gate from the cut construction: k > k_i - (k_i + 3 - l_i)/Re(s).
bool estimate_bound_check(int k_i, int l_i, cplx s, int observed_k);

// Ready-made logarithmic derivatives for the closed-form fields.
// exponent/(z - center):
std::function<cplx(cplx)> dlog_power(cplx center, cplx exponent);
// sum of simple terms exponent_j/(z - center_j):
std::function<cplx(cplx)> dlog_sum(
    std::vector<std::pair<cplx, cplx>> center_exponent);
// f = e^{(z-c)^{-k}} (z-c)^{-l}: -k (z-c)^{-k-1} - l/(z-c):
std::function<cplx(cplx)> dlog_exp_type(cplx center, int k, int l);

}  // namespace qdl
