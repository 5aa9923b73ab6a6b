#pragma once

#include <functional>
#include <string>
#include <vector>

#include "qdl/hurwitz.hpp"

namespace qdl {

enum class Termination { hits_zero, escapes_to_pole, length_budget, closed };

struct Trajectory {
  std::vector<cplx> points;
  double phase = 0.0;          // theta of the traced direction field
  double emission_angle = 0.0; // launch direction at the source zero
  int source_zero = -1;
  Termination termination = Termination::length_budget;
  int hit_index = -1;          // zero index or pole index, per termination
  double crossing_angle = 0.0; // arg z when first passing the ordering radius
  double arc_length = 0.0;     // flat-metric length
};

struct Strip {
  int zero_a = -1, zero_b = -1;     // boundary zeros
  std::vector<int> separatrices;    // boundary separatrix indices
  Trajectory connection;            // the geodesic joining the zeros
  cplx period = 0.0;                // int sqrt(phi) along the connection
};

struct HalfPlane {
  std::vector<int> separatrices;
  int pole = -1;
};

struct StripDecomposition {
  std::vector<Trajectory> separatrices;
  std::vector<Strip> strips;
  std::vector<HalfPlane> half_planes;
  bool saddle_free = false;
};

struct TraceOptions {
  double ode_tol = 1e-9;
  double capture_radius = 1e-4;
  double launch_radius = 1e-3;
  double length_budget = 400.0;
  double escape_radius = 0.0;  // 0: derived from the singularity spread
  double order_radius = 0.0;   // 0: derived from the singularity spread
  int max_steps = 200000;
};

struct SqrtPath {
  std::vector<cplx> values;  // branch-matched sqrt(phi) at the vertices
  cplx w_increment = 0.0;    // int sqrt(phi) dz along the polyline
};

// Continuous branch of sqrt(coefficient) along the polyline, starting from
// the sign of the principal root at the first vertex times initial_sign.
// Throws when the path passes too close to a vanishing coefficient.
SqrtPath sqrt_continuation(const std::function<cplx(cplx)>& coeff,
                           const std::vector<cplx>& path, int initial_sign,
                           double clearance = 1e-12);

// The m+2 horizontal rays of phase theta leaving the given zero, each traced
// to termination. Plain flavor only.
std::vector<Trajectory> separatrices_at_zero(const QDifferential& q,
                                             int zero_index, double theta,
                                             const TraceOptions& opt = {});

// Trace one geodesic ray leaving the zero in the direction alpha.
Trajectory shoot(const QDifferential& q, int zero_index, double alpha,
                 const TraceOptions& opt = {});

// Full horizontal strip decomposition at phase theta. Throws on detected
// closed trajectories (ring domain) and on budget exhaustion.
StripDecomposition strip_decomposition(const QDifferential& q, double theta,
                                       const TraceOptions& opt = {});

struct SaddleConnection {
  double phase = 0.0;  // arg(period) mod pi
  int zero_a = -1, zero_b = -1;
  Trajectory trajectory;
  cplx period = 0.0;
};

// Scan emission directions from every zero, refine near-misses at other
// zeros by bisection, and return each connection once.
std::vector<SaddleConnection> find_saddle_connections(
    const QDifferential& q, double length_bound,
    const TraceOptions& opt = {}, int grid = 360);

// Period of the geodesic between two zeros along a traced trajectory,
// including the endpoint tails regularized by the z = z0 + delta u^2
// substitution at simple zeros.
cplx connection_period(const QDifferential& q, const Trajectory& t,
                       int zero_a, int zero_b);

}  // namespace qdl
