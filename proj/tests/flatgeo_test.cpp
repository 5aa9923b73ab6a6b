#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "qdl/flatgeo.hpp"

using namespace qdl;

namespace {

QDifferential a2_plain(cplx a = {-3.0, 0.0}, cplx b = {0.0, 0.0}) {
  return make_qdiff(type_a_cover({a, b}), {4}, 3.0, QFlavor::plain);
}

QDifferential a1_plain() {
  return make_qdiff(type_a_cover({cplx(-1.0)}), {4}, 3.0, QFlavor::plain);
}

// Independent quadrature oracle for int_0^{sqrt 3} sqrt(3x - x^3) dx via the
// u^2 endpoint substitution on both ends and Simpson in between.
double a2_period_oracle() {
  auto g = [](double x) { return std::sqrt(std::max(0.0, 3.0 * x - x * x * x)); };
  int n = 200000;
  double h = std::sqrt(3.0) / n;
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    double x0 = i * h, x1 = (i + 1) * h;
    acc += (g(x0) + 4.0 * g(0.5 * (x0 + x1)) + g(x1)) * (h / 6.0);
  }
  return acc;
}

}  // namespace

TEST_CASE("sqrt continuation on a constant field") {
  auto one = [](cplx) { return cplx(1.0); };
  SqrtPath sp = sqrt_continuation(one, {cplx(0.0), cplx(1.0)}, 1);
  CHECK(std::abs(sp.w_increment - 1.0) < 1e-12);
  SqrtPath sn = sqrt_continuation(one, {cplx(0.0), cplx(1.0)}, -1);
  CHECK(std::abs(sn.w_increment + 1.0) < 1e-12);
}

TEST_CASE("sqrt branch flips after a loop around a simple zero") {
  auto lin = [](cplx z) { return z; };
  std::vector<cplx> loop;
  for (int i = 0; i <= 64; ++i)
    loop.push_back(std::exp(cplx(0.0, 2.0 * M_PI * i / 64)));
  SqrtPath sp = sqrt_continuation(lin, loop, 1);
  CHECK(std::abs(sp.values.back() + sp.values.front()) < 1e-9);
}

TEST_CASE("sqrt continuation matches a known segment integral") {
  // int_2^3 sqrt(z) dz = (2/3)(3^{3/2} - 2^{3/2})
  auto lin = [](cplx z) { return z; };
  SqrtPath sp = sqrt_continuation(lin, {cplx(2.0), cplx(3.0)}, 1);
  double want = (2.0 / 3.0) * (std::pow(3.0, 1.5) - std::pow(2.0, 1.5));
  CHECK(std::abs(sp.w_increment - want) < 1e-9);
}

TEST_CASE("a simple zero emits three rays") {
  QDifferential q = a2_plain();
  std::vector<Trajectory> rays = separatrices_at_zero(q, 0, 0.3);
  CHECK(rays.size() == 3);
  for (const Trajectory& t : rays) {
    CHECK(t.points.size() > 2);
    CHECK((t.termination == Termination::escapes_to_pole ||
           t.termination == Termination::hits_zero));
  }
}

TEST_CASE("generic A2 phase gives two strips and five half planes") {
  QDifferential q = a2_plain();
  StripDecomposition dec = strip_decomposition(q, 0.3);
  CHECK(dec.saddle_free);
  CHECK(dec.separatrices.size() == 9);
  CHECK(dec.strips.size() == 2);
  CHECK(dec.half_planes.size() == 5);
}

TEST_CASE("decomposition counts are stable under tolerance halving") {
  QDifferential q = a2_plain();
  TraceOptions opt;
  opt.ode_tol /= 2.0;
  opt.capture_radius /= 2.0;
  StripDecomposition dec = strip_decomposition(q, 0.3, opt);
  CHECK(dec.strips.size() == 2);
  CHECK(dec.half_planes.size() == 5);
}

TEST_CASE("the real-axis phase of A2 carries a saddle trajectory") {
  QDifferential q = a2_plain();
  StripDecomposition dec = strip_decomposition(q, 0.0);
  CHECK_FALSE(dec.saddle_free);
  StripDecomposition plus = strip_decomposition(q, 0.05);
  StripDecomposition minus = strip_decomposition(q, -0.05);
  CHECK(plus.saddle_free);
  CHECK(minus.saddle_free);
}

TEST_CASE("A2 saddle connections and their periods") {
  QDifferential q = a2_plain();
  std::vector<SaddleConnection> sc = find_saddle_connections(q, 100.0);
  REQUIRE(sc.size() >= 2);
  double want = a2_period_oracle();
  // Both connections have equal modulus by the z -> -z symmetry; one is
  // horizontal (real period), one vertical (imaginary period).
  std::vector<double> mods, phases;
  for (const SaddleConnection& c : sc) {
    mods.push_back(std::abs(c.period));
    phases.push_back(c.phase);
  }
  int close = 0;
  for (double m : mods)
    if (std::abs(m - want) < 1e-5) ++close;
  CHECK(close >= 2);
  bool has_horizontal = false, has_vertical = false;
  for (double p : phases) {
    if (std::abs(p) < 1e-5 || std::abs(p - 1.0) < 1e-5) has_horizontal = true;
    if (std::abs(p - 0.5) < 1e-5) has_vertical = true;
  }
  CHECK(has_horizontal);
  CHECK(has_vertical);
}

TEST_CASE("strip periods agree with the saddle connection periods") {
  QDifferential q = a2_plain();
  StripDecomposition dec = strip_decomposition(q, 0.3);
  REQUIRE(dec.strips.size() == 2);
  double want = a2_period_oracle();
  for (const Strip& st : dec.strips) {
    CHECK(std::abs(std::abs(st.period) - want) < 1e-5);
    CHECK(st.zero_a != st.zero_b);
  }
}

TEST_CASE("A1 strip period is i pi / 2") {
  QDifferential q = a1_plain();
  StripDecomposition dec = strip_decomposition(q, 0.4);
  CHECK(dec.saddle_free);
  REQUIRE(dec.strips.size() == 1);
  CHECK(dec.half_planes.size() == 4);
  CHECK(std::abs(dec.strips[0].period - cplx(0.0, M_PI / 2.0)) < 1e-6);
}

TEST_CASE("horizontality along separatrices") {
  QDifferential q = a2_plain();
  double theta = 0.3;
  StripDecomposition dec = strip_decomposition(q, theta);
  auto coeff = [&](cplx z) { return coefficient(q, z); };
  for (const Trajectory& t : dec.separatrices) {
    // Check a mid-portion of the polyline away from the zero.
    size_t lo = t.points.size() / 4, hi = 3 * t.points.size() / 4;
    if (hi - lo < 2) continue;
    std::vector<cplx> part(t.points.begin() + lo, t.points.begin() + hi);
    SqrtPath sp = sqrt_continuation(coeff, part, 1);
    double im = std::abs(
        (std::exp(cplx(0.0, -theta)) * sp.w_increment).imag());
    CHECK(im < 1e-6 * (1.0 + std::abs(sp.w_increment)));
  }
}

TEST_CASE("ring domain is reported") {
  QDifferential q;
  q.cover.num = {cplx(1.0)};
  q.cover.den = {cplx(1.0)};
  q.s = 3.0;
  q.flavor = QFlavor::plain;
  q.omega = primary_differential({{cplx(0.0), 2}}, 2);
  CHECK_THROWS_WITH_AS(strip_decomposition(q, M_PI / 2.0),
                       doctest::Contains("ring domain"), std::runtime_error);
}
