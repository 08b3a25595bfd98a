#pragma once

#include <vector>

#include "steiner_ladder/ladder.hpp"
#include "steiner_ladder/tree.hpp"

namespace steiner_ladder::dynamics {

/// Parameters of the interval map attached to a tree whose wind rose is
/// turned by `beta` from the bisector.
struct DynamicsParams {
  double alpha = 0.0;
  double lambda = 0.0;
  double beta = 0.0;
  /// Half side lengths of the first parallelogram along e3 and e2.
  double a = 0.0;
  double b = 0.0;
  /// Hexagonal coordinates (l, delta, -delta) of the centre of the first parallelogram.
  double l = 0.0;
  double delta = 0.0;
  double q_plus = 0.0;
  double q_minus = 0.0;
  double t1 = 0.0;
  double t_star = 0.0;
  double t2 = 0.0;

  HexFrame frame() const { return HexFrame::at_angle(beta); }
};

/// Parallelogram at scale lambda^(k-1): corners on the two sides (A upper,
/// B lower), U facing away from the apex, V facing it.
struct Parallelogram {
  Point A, B, U, V;
};

enum class MapStatus { ok, forbidden, escaped };

struct MapResult {
  double value = 0.0;
  MapStatus status = MapStatus::ok;
};

enum class OrbitStatus { ok, hit_forbidden, escaped };
const char* to_string(OrbitStatus s);

struct Orbit {
  /// nu_j for j = first_index, first_index + 1, ...
  std::vector<double> values;
  OrbitStatus status = OrbitStatus::ok;
  int first_index = 0;
};

enum class Direction { forward, inverse };

/// Derived quantities from (lambda, a, b, delta).
DynamicsParams make_params(double lambda, double a, double b, double delta);

/// Builds the frame at angle beta, the parallelogram on A1, B1 with sides
/// along e2 and e3, and the derived map parameters. Throws
/// HypothesisViolation unless the angle condition holds and |beta| <= alpha.
DynamicsParams derive_params(double alpha, double lambda, double beta);

Parallelogram parallelogram(const DynamicsParams& p, int k);

/// Second hexagonal coordinate (canonical representative) in the frame at beta.
double hex_height(const DynamicsParams& p, const Point& x);

/// Height of the segment entering parallelogram j+1, and its inverse.
double mu_from_nu(const DynamicsParams& p, int j, double nu);
double nu_from_mu(const DynamicsParams& p, int j, double mu);

/// t/lambda + q+ below t*, t/lambda + q- above. Hitting t* is forbidden and a
/// result outside [0, 1] escapes.
MapResult forward_map(const DynamicsParams& p, double t);

/// Fractional part of lambda t + t2. Forbidden at t = q+.
MapResult inverse_map(const DynamicsParams& p, double t);

/// `n` values starting with t0. Stops early at a forbidden or escaping step.
Orbit iterate(const DynamicsParams& p, double t0, int n, Direction dir);

/// Points of [0, 1) returned to themselves by `period` inverse steps, sorted.
std::vector<double> periodic_points(const DynamicsParams& p, int period);

/// Forward orbit of length `n` running around the cycle through the periodic
/// point `t`. Values are taken from the contracting inverse map, so they do
/// not drift.
Orbit cycle_orbit(const DynamicsParams& p, double t, int period, int n, int first_index = 0);

/// Tree whose segments parallel to e1 sit at the heights encoded by the
/// orbit. First index 0 starts on the segment [A0 B0]; first index 1 starts
/// at the inner corner of the first parallelogram with edges to A1 and B1.
/// Needs orbit values for j = first_index..K. The last segment ends on
/// parallelogram K+1, at a corner terminal when it hits one, otherwise at a
/// pseudo-terminal labelled kCutLabel.
EmbeddedTree tree_from_orbit(const DynamicsParams& p, const ladder::LadderParams& ldr, const Orbit& orbit,
                             int K);

/// Reads nu_j off the segments parallel to e1.
Orbit orbit_from_tree(const EmbeddedTree& tree, const DynamicsParams& p);

/// Direction of the wind-rose line closest to the bisector, in (-pi/2, pi/2].
double estimate_beta(const EmbeddedTree& tree);

}  // namespace steiner_ladder::dynamics
