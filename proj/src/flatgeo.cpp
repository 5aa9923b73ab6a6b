#include "qdl/flatgeo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qdl {

namespace {

cplx match_branch(cplx principal, cplx ref) {
  return std::abs(principal - ref) <= std::abs(principal + ref) ? principal
                                                                : -principal;
}

struct PlainField {
  const QDifferential* q;
  int e;  // s - 2

  explicit PlainField(const QDifferential& qd) : q(&qd) {
    if (qd.flavor != QFlavor::plain)
      throw std::invalid_argument("flat geometry needs the plain flavor");
    e = static_cast<int>(std::lround(qd.s.real())) - 2;
  }
  cplx coeff(cplx z) const { return coefficient(*q, z); }
  int zero_order() const { return e; }
  // Leading coefficient of phi at the given simple zero of f.
  cplx leading(int zero_index) const {
    cplx z0 = q->zeros[zero_index];
    cplx fp = eval(derivative(q->cover.num), z0) / eval(q->cover.den, z0);
    cplx acc = q->omega.coefficient(z0);
    for (int i = 0; i < e; ++i) acc *= fp;
    return acc;
  }
  double zero_spread() const {
    double r = 1.0;
    for (cplx z : q->zeros) r = std::max(r, std::abs(z));
    for (const PoleSpec& p : q->cover.poles)
      if (!p.at_infinity) r = std::max(r, std::abs(p.z));
    return r;
  }
};

struct Derived {
  double escape, order;
};

Derived radii(const PlainField& field, const TraceOptions& opt) {
  double spread = field.zero_spread();
  Derived d;
  d.escape = opt.escape_radius > 0 ? opt.escape_radius : 2.5 * (1.0 + spread);
  d.order = opt.order_radius > 0 ? opt.order_radius : 1.6 * (1.0 + spread);
  return d;
}

int infinity_pole_index(const QDifferential& q) {
  for (size_t i = 0; i < q.cover.poles.size(); ++i)
    if (q.cover.poles[i].at_infinity) return static_cast<int>(i);
  return -1;
}

// Adaptive Cash-Karp RK45 on dz/dt = e^{i theta}/sqrt(phi), t = flat arc
// length, with the sqrt branch carried along by matching.
Trajectory trace_from(const PlainField& field, cplx z_start, cplx ref0,
                      double theta, int source_zero,
                      const TraceOptions& opt) {
  static const double b21 = 1.0 / 5;
  static const double b31 = 3.0 / 40, b32 = 9.0 / 40;
  static const double b41 = 3.0 / 10, b42 = -9.0 / 10, b43 = 6.0 / 5;
  static const double b51 = -11.0 / 54, b52 = 5.0 / 2, b53 = -70.0 / 27,
                      b54 = 35.0 / 27;
  static const double b61 = 1631.0 / 55296, b62 = 175.0 / 512,
                      b63 = 575.0 / 13824, b64 = 44275.0 / 110592,
                      b65 = 253.0 / 4096;
  static const double c1 = 37.0 / 378, c3 = 250.0 / 621, c4 = 125.0 / 594,
                      c6 = 512.0 / 1771;
  static const double d1 = 2825.0 / 27648, d3 = 18575.0 / 48384,
                      d4 = 13525.0 / 55296, d5 = 277.0 / 14336, d6 = 0.25;

  const QDifferential& q = *field.q;
  Derived rad = radii(field, opt);
  cplx dir = std::exp(cplx(0.0, theta));

  Trajectory out;
  out.phase = theta;
  out.source_zero = source_zero;
  out.points.push_back(z_start);

  cplx z = z_start, ref = ref0;
  cplx u0 = dir / ref0;
  double t = 0.0, h = 1e-4;
  cplx z_prev = z_start;
  bool crossed_order = false;
  bool left_source = false;

  auto deriv = [&](cplx zz, cplx branch_ref) {
    cplx c = field.coeff(zz);
    cplx s = match_branch(std::sqrt(c), branch_ref);
    return dir / s;
  };

  for (int step = 0; step < opt.max_steps; ++step) {
    cplx k1 = deriv(z, ref);
    cplx k2 = deriv(z + h * (b21 * k1), ref);
    cplx k3 = deriv(z + h * (b31 * k1 + b32 * k2), ref);
    cplx k4 = deriv(z + h * (b41 * k1 + b42 * k2 + b43 * k3), ref);
    cplx k5 = deriv(z + h * (b51 * k1 + b52 * k2 + b53 * k3 + b54 * k4), ref);
    cplx k6 = deriv(
        z + h * (b61 * k1 + b62 * k2 + b63 * k3 + b64 * k4 + b65 * k5), ref);
    cplx z5 = z + h * (c1 * k1 + c3 * k3 + c4 * k4 + c6 * k6);
    cplx z4 = z + h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6);
    double err = std::abs(z5 - z4) / (1.0 + std::abs(z));
    if (err > opt.ode_tol) {
      h *= std::max(0.2, 0.9 * std::pow(opt.ode_tol / err, 0.25));
      continue;
    }
    z_prev = z;
    z = z5;
    t += h;
    ref = match_branch(std::sqrt(field.coeff(z)), ref);
    out.points.push_back(z);
    if (err > 0.0)
      h = std::min(h * std::min(5.0, 0.9 * std::pow(opt.ode_tol / err, 0.2)),
                   0.5 + 0.1 * std::abs(z));

    if (!left_source &&
        std::abs(z - z_start) > 5.0 * opt.launch_radius)
      left_source = true;

    // Capture at zeros.
    bool done = false;
    for (size_t j = 0; j < q.zeros.size(); ++j) {
      if (static_cast<int>(j) == source_zero && !left_source) continue;
      if (std::abs(z - q.zeros[j]) < opt.capture_radius) {
        out.termination = Termination::hits_zero;
        out.hit_index = static_cast<int>(j);
        out.points.push_back(q.zeros[j]);
        done = true;
        break;
      }
    }
    if (done) break;
    // Capture at finite poles.
    for (size_t j = 0; j < q.cover.poles.size(); ++j) {
      const PoleSpec& p = q.cover.poles[j];
      if (p.at_infinity) continue;
      if (std::abs(z - p.z) < 10.0 * opt.capture_radius) {
        out.termination = Termination::escapes_to_pole;
        out.hit_index = static_cast<int>(j);
        done = true;
        break;
      }
    }
    if (done) break;
    if (!crossed_order && std::abs(z) >= rad.order) {
      crossed_order = true;
      out.crossing_angle = std::arg(z);
    }
    if (std::abs(z) >= rad.escape) {
      out.termination = Termination::escapes_to_pole;
      out.hit_index = infinity_pole_index(q);
      break;
    }
    // Closure: the last segment passes the start point going the same way.
    // The tolerance includes the chord sagitta of the step so a smooth
    // closed orbit is recognized even when no sample lands on the start.
    if (left_source) {
      cplx seg = z - z_prev;
      double len2 = std::norm(seg);
      if (len2 > 0.0) {
        double u = std::clamp(
            (std::conj(seg) * (z_start - z_prev)).real() / len2, 0.0, 1.0);
        double d = std::abs(z_prev + u * seg - z_start);
        if (d < opt.capture_radius + 0.25 * len2 &&
            (seg / u0).real() > 0.0) {
          out.termination = Termination::closed;
          break;
        }
      }
    }
    if (t >= opt.length_budget) {
      out.termination = Termination::length_budget;
      break;
    }
  }
  out.arc_length = t;
  return out;
}

double emission_angle_of(const PlainField& field, int zero_index, double theta,
                         int ray) {
  int m = field.zero_order();
  cplx c = field.leading(zero_index);
  return (2.0 * theta - std::arg(c) + 2.0 * M_PI * ray) / (m + 2);
}

Trajectory launch(const PlainField& field, int zero_index, double alpha,
                  double theta_hint, bool use_hint, const TraceOptions& opt) {
  const QDifferential& q = *field.q;
  cplx z0 = q.zeros[zero_index];
  cplx z_start = z0 + opt.launch_radius * std::exp(cplx(0.0, alpha));
  cplx sp = std::sqrt(field.coeff(z_start));
  double theta;
  cplx ref;
  if (use_hint) {
    // Pick the branch whose velocity best matches the outward direction.
    cplx dir = std::exp(cplx(0.0, theta_hint));
    cplx out_dir = std::exp(cplx(0.0, alpha));
    ref = ((dir / sp) / out_dir).real() >= ((dir / -sp) / out_dir).real()
              ? sp
              : -sp;
    theta = theta_hint;
  } else {
    ref = sp;
    theta = std::arg(sp * std::exp(cplx(0.0, alpha)));
  }
  Trajectory t = trace_from(field, z_start, ref, theta, zero_index, opt);
  t.emission_angle = alpha;
  return t;
}

// Signed side on which the trajectory passes the target zero; +-1, or 0 on
// capture/no data.
int passing_side(const Trajectory& t, cplx target, double* min_dist) {
  double best = 1e300;
  size_t best_i = 0;
  for (size_t i = 0; i < t.points.size(); ++i) {
    double d = std::abs(t.points[i] - target);
    if (d < best) {
      best = d;
      best_i = i;
    }
  }
  if (min_dist) *min_dist = best;
  if (t.points.size() < 2) return 0;
  size_t i = std::min(best_i, t.points.size() - 2);
  cplx v = t.points[i + 1] - t.points[i];
  double cross = (std::conj(v) * (target - t.points[i])).imag();
  return cross > 0 ? 1 : cross < 0 ? -1 : 0;
}

cplx tail_integral(const PlainField& field, cplx z0, cplx z1, int m,
                   cplx match_value) {
  // z = z0 + delta u^p with p = 4/(m+2) turns sqrt(phi) dz into a regular
  // integrand vanishing linearly at u = 0.
  cplx delta = z1 - z0;
  double p = 4.0 / (m + 2);
  int n = 1024;
  cplx acc = 0.0;
  cplx ref = match_value;  // branch continued from the z1 end
  for (int i = n; i-- > 0;) {
    double u = (i + 0.5) / n;
    cplx z = z0 + delta * std::pow(u, p);
    cplx s = match_branch(std::sqrt(field.coeff(z)), ref);
    ref = s;
    cplx jac = delta * p * std::pow(u, p - 1.0) / double(n);
    acc += s * jac;
  }
  return acc;
}

}  // namespace

SqrtPath sqrt_continuation(const std::function<cplx(cplx)>& coeff,
                           const std::vector<cplx>& path, int initial_sign,
                           double clearance) {
  if (path.size() < 2)
    throw std::invalid_argument("sqrt_continuation needs a polyline");
  SqrtPath out;
  cplx ref = double(initial_sign) * std::sqrt(coeff(path[0]));
  if (std::abs(ref) < clearance)
    throw std::runtime_error("sqrt_continuation: start too close to a zero");
  out.values.push_back(ref);
  cplx w = 0.0;
  for (size_t e = 0; e + 1 < path.size(); ++e) {
    cplx a = path[e], b = path[e + 1];
    // Subdivide until the increment stabilizes; branch carried sample to
    // sample.
    cplx prev_inc = 0.0;
    cplx seg_ref_out = ref;
    for (int n = 32;; n *= 2) {
      cplx inc = 0.0;
      cplx r = ref;
      cplx prev_val = r;
      for (int i = 1; i <= n; ++i) {
        cplx z = a + (b - a) * (double(i) / n);
        cplx c = coeff(z);
        if (std::abs(c) < clearance)
          throw std::runtime_error(
              "sqrt_continuation: path too close to a singular point");
        cplx s = match_branch(std::sqrt(c), r);
        inc += 0.5 * (prev_val + s) * ((b - a) / double(n));
        prev_val = s;
        r = s;
      }
      if (n >= 64 && std::abs(inc - prev_inc) <
                         1e-10 * (1.0 + std::abs(inc))) {
        w += inc;
        seg_ref_out = r;
        break;
      }
      prev_inc = inc;
      if (n >= 1 << 15) {
        w += inc;
        seg_ref_out = r;
        break;
      }
    }
    ref = seg_ref_out;
    out.values.push_back(ref);
  }
  out.w_increment = w;
  return out;
}

Trajectory shoot(const QDifferential& q, int zero_index, double alpha,
                 const TraceOptions& opt) {
  PlainField field(q);
  return launch(field, zero_index, alpha, 0.0, false, opt);
}

std::vector<Trajectory> separatrices_at_zero(const QDifferential& q,
                                             int zero_index, double theta,
                                             const TraceOptions& opt) {
  PlainField field(q);
  int m = field.zero_order();
  if (m < 1)
    throw std::invalid_argument("separatrices need a zero of order >= 1");
  std::vector<Trajectory> out;
  for (int r = 0; r < m + 2; ++r) {
    double alpha = emission_angle_of(field, zero_index, theta, r);
    Trajectory t = launch(field, zero_index, alpha, theta, true, opt);
    out.push_back(std::move(t));
  }
  return out;
}

cplx connection_period(const QDifferential& q, const Trajectory& t,
                       int zero_a, int zero_b) {
  PlainField field(q);
  int m = field.zero_order();
  cplx za = q.zeros[zero_a], zb = q.zeros[zero_b];
  // Interior polyline: clip the trajectory ends at a modest standoff from
  // both zeros and integrate tails with the regularizing substitution.
  double standoff = 0.05;
  std::vector<cplx> mid;
  for (cplx p : t.points)
    if (std::abs(p - za) > standoff && std::abs(p - zb) > standoff)
      mid.push_back(p);
  if (mid.size() < 2)
    throw std::runtime_error("connection too short for period quadrature");
  auto coeff = [&](cplx z) { return field.coeff(z); };
  SqrtPath sp = sqrt_continuation(coeff, mid, 1);
  cplx head = tail_integral(field, za, mid.front(), m, sp.values.front());
  cplx tail = tail_integral(field, zb, mid.back(), m, sp.values.back());
  cplx period = head + sp.w_increment - tail;
  // The branch is only defined up to a global sign; normalize.
  if (period.imag() < 0.0 ||
      (std::abs(period.imag()) < 1e-12 && period.real() < 0.0))
    period = -period;
  return period;
}

StripDecomposition strip_decomposition(const QDifferential& q, double theta,
                                       const TraceOptions& opt) {
  PlainField field(q);
  StripDecomposition dec;

  if (q.zeros.empty()) {
    // Probe for ring domains.
    Trajectory probe = trace_from(field, field.zero_spread() + 1.0,
                                  std::sqrt(field.coeff(field.zero_spread() + 1.0)),
                                  theta, -1, opt);
    if (probe.termination == Termination::closed)
      throw std::runtime_error("ring domain: closed trajectory detected");
    dec.saddle_free = true;
    return dec;
  }

  int n_zeros = static_cast<int>(q.zeros.size());
  for (int zi = 0; zi < n_zeros; ++zi) {
    std::vector<Trajectory> rays = separatrices_at_zero(q, zi, theta, opt);
    for (Trajectory& t : rays) dec.separatrices.push_back(std::move(t));
  }

  dec.saddle_free = true;
  for (const Trajectory& t : dec.separatrices) {
    if (t.termination == Termination::closed)
      throw std::runtime_error("ring domain: closed separatrix detected");
    if (t.termination == Termination::length_budget)
      throw std::runtime_error(
          "length budget exhausted: recurrent trajectory suspected");
    if (t.termination == Termination::hits_zero) dec.saddle_free = false;
  }
  if (!dec.saddle_free) return dec;

  // Rotation system: half-edges 2e (zero -> pole) and 2e+1 (pole -> zero).
  // Vertices are the zeros and the poles; the angular order at a pole is by
  // the outward direction in its own chart, which reverses the z-plane
  // angle at infinity.
  int n_edges = static_cast<int>(dec.separatrices.size());
  int n_poles = static_cast<int>(q.cover.poles.size());
  int n_vertices = n_zeros + n_poles;
  std::vector<std::vector<std::pair<double, int>>> outgoing(n_vertices);
  for (int e = 0; e < n_edges; ++e) {
    const Trajectory& t = dec.separatrices[e];
    outgoing[t.source_zero].push_back({t.emission_angle, 2 * e});
    int pv = n_zeros + t.hit_index;
    double ang;
    if (q.cover.poles[t.hit_index].at_infinity)
      ang = -t.crossing_angle;
    else
      ang = std::arg(t.points[t.points.size() / 2] -
                     q.cover.poles[t.hit_index].z);
    outgoing[pv].push_back({ang, 2 * e + 1});
  }
  std::vector<int> ccw_next(2 * n_edges, -1), ccw_prev(2 * n_edges, -1);
  for (auto& ring : outgoing) {
    std::sort(ring.begin(), ring.end());
    int k = static_cast<int>(ring.size());
    for (int i = 0; i < k; ++i) {
      ccw_next[ring[i].second] = ring[(i + 1) % k].second;
      ccw_prev[ring[i].second] = ring[(i + k - 1) % k].second;
    }
  }

  // Faces to the left of each half-edge: next(h) = cw successor of twin(h).
  std::vector<int> visited(2 * n_edges, 0);
  for (int h0 = 0; h0 < 2 * n_edges; ++h0) {
    if (visited[h0]) continue;
    std::vector<std::pair<int, int>> zero_corners;  // (zero, in/out edges)
    std::vector<int> pole_corners;
    std::vector<int> edges_on_face;
    std::vector<std::pair<int, std::pair<int, int>>> corner_detail;
    int h = h0;
    do {
      visited[h] = 1;
      edges_on_face.push_back(h / 2);
      int tw = h ^ 1;
      int nh = ccw_prev[tw];
      // Corner between h and nh sits at the head vertex of h.
      int e_in = h / 2, e_out = nh / 2;
      bool head_is_zero = (h % 2) == 1 ? true : false;
      const Trajectory& te = dec.separatrices[e_in];
      if ((h % 2) == 0)
        head_is_zero = false;  // zero -> pole: head is the pole
      int v = head_is_zero ? te.source_zero : n_zeros + te.hit_index;
      if (head_is_zero)
        corner_detail.push_back({v, {e_in, e_out}});
      else
        pole_corners.push_back(v - n_zeros);
      h = nh;
    } while (h != h0);
    (void)zero_corners;

    if (corner_detail.size() == 1) {
      HalfPlane hp;
      hp.separatrices = edges_on_face;
      hp.pole = pole_corners.empty() ? -1 : pole_corners.front();
      dec.half_planes.push_back(std::move(hp));
    } else if (corner_detail.size() == 2) {
      Strip st;
      st.zero_a = corner_detail[0].first;
      st.zero_b = corner_detail[1].first;
      st.separatrices = edges_on_face;

      // Shoot inside the corner sector at zero_a toward zero_b.
      int za = st.zero_a;
      auto [e_in, e_out] = corner_detail[0].second;
      double a_in = dec.separatrices[e_in].emission_angle;
      double a_out = dec.separatrices[e_out].emission_angle;
      // The sector between the two rays that contains no other ray.
      std::vector<double> angs;
      for (const Trajectory& t : dec.separatrices)
        if (t.source_zero == za) angs.push_back(t.emission_angle);
      auto norm = [](double x) {
        while (x < 0) x += 2.0 * M_PI;
        while (x >= 2.0 * M_PI) x -= 2.0 * M_PI;
        return x;
      };
      double lo = norm(a_in), span = norm(a_out - a_in);
      bool empty_fwd = true;
      for (double a : angs) {
        double rel = norm(a - lo);
        if (rel > 1e-9 && rel < span - 1e-9) empty_fwd = false;
      }
      if (!empty_fwd) {
        lo = norm(a_out);
        span = norm(a_in - a_out);
      }

      cplx target = q.zeros[st.zero_b];
      // Sample the full open sector including near both bounding rays, so a
      // connection sitting in the first or last subinterval still brackets.
      int grid = 33;
      double prev_alpha = 0.0;
      int prev_side = 0;
      bool found = false;
      for (int i = 0; i <= grid && !found; ++i) {
        double alpha = lo + span * (0.002 + 0.996 * i / grid);
        Trajectory t = launch(field, za, alpha, 0.0, false, opt);
        if (t.termination == Termination::hits_zero &&
            t.hit_index == st.zero_b) {
          st.connection = std::move(t);
          found = true;
          break;
        }
        double dist;
        int side = passing_side(t, target, &dist);
        if (prev_side != 0 && side != 0 && side != prev_side) {
          double a_lo = prev_alpha, a_hi = alpha;
          int side_lo = prev_side;
          for (int it = 0; it < 80 && !found; ++it) {
            double am = 0.5 * (a_lo + a_hi);
            Trajectory tm = launch(field, za, am, 0.0, false, opt);
            if (tm.termination == Termination::hits_zero &&
                tm.hit_index == st.zero_b) {
              st.connection = std::move(tm);
              found = true;
              break;
            }
            int sm = passing_side(tm, target, &dist);
            if (sm == side_lo)
              a_lo = am;
            else
              a_hi = am;
          }
        }
        prev_alpha = alpha;
        prev_side = side;
      }
      if (!found)
        throw std::runtime_error(
            "strip saddle connection not found by shooting");
      st.period = connection_period(q, st.connection, st.zero_a, st.zero_b);
      dec.strips.push_back(std::move(st));
    } else if (!corner_detail.empty()) {
      throw std::runtime_error(
          "face with more than two zero corners: not a strip decomposition");
    }
  }
  return dec;
}

std::vector<SaddleConnection> find_saddle_connections(
    const QDifferential& q, double length_bound, const TraceOptions& opt,
    int grid) {
  PlainField field(q);
  std::vector<SaddleConnection> out;
  int n_zeros = static_cast<int>(q.zeros.size());
  auto record = [&](Trajectory&& t, int za) {
    int zb = t.hit_index;
    if (t.arc_length > length_bound) return;
    cplx period = connection_period(q, t, za, zb);
    for (const SaddleConnection& sc : out) {
      bool same_pair = (sc.zero_a == za && sc.zero_b == zb) ||
                       (sc.zero_a == zb && sc.zero_b == za);
      if (same_pair && std::abs(sc.period - period) < 1e-6) return;
    }
    SaddleConnection sc;
    sc.zero_a = za;
    sc.zero_b = zb;
    sc.period = period;
    sc.phase = std::fmod(std::arg(period) / M_PI + 2.0, 1.0);
    sc.trajectory = std::move(t);
    out.push_back(std::move(sc));
  };

  for (int za = 0; za < n_zeros; ++za) {
    std::vector<Trajectory> scan;
    for (int i = 0; i < grid; ++i) {
      double alpha = 2.0 * M_PI * i / grid;
      scan.push_back(launch(field, za, alpha, 0.0, false, opt));
      if (scan.back().termination == Termination::hits_zero)
        record(Trajectory(scan.back()), za);
    }
    for (int zb = 0; zb < n_zeros; ++zb) {
      if (zb == za) continue;
      cplx target = q.zeros[zb];
      for (int i = 0; i < grid; ++i) {
        const Trajectory& t1 = scan[i];
        const Trajectory& t2 = scan[(i + 1) % grid];
        double d1, d2;
        int s1 = passing_side(t1, target, &d1);
        int s2 = passing_side(t2, target, &d2);
        double reach = 2.0 * field.zero_spread();
        if (s1 == 0 || s2 == 0 || s1 == s2 || std::min(d1, d2) > reach)
          continue;
        double a_lo = 2.0 * M_PI * i / grid;
        double a_hi = 2.0 * M_PI * (i + 1) / grid;
        int side_lo = s1;
        for (int it = 0; it < 80; ++it) {
          double am = 0.5 * (a_lo + a_hi);
          Trajectory tm = launch(field, za, am, 0.0, false, opt);
          if (tm.termination == Termination::hits_zero &&
              tm.hit_index == zb) {
            record(std::move(tm), za);
            break;
          }
          double dm;
          int sm = passing_side(tm, target, &dm);
          if (sm == side_lo)
            a_lo = am;
          else
            a_hi = am;
        }
      }
    }
  }
  return out;
}

}  // namespace qdl
